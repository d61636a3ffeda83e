import subprocess
import sys

import pytest

from midpointfigs.inputs import InputError, read_delta_csv, read_dot
from midpointfigs.render import FigureSpec, render, simplex_corners


def run_figs(*args):
    return subprocess.run(
        [sys.executable, "-m", "midpointfigs.cli", *args],
        capture_output=True, text=True,
    )


class TestDotParsing:
    def test_counts_match_build(self, exports):
        # levels 1..4 for two leaves: drawn counts equal the builder's counts
        for n in (1, 2, 3, 4):
            graph = read_dot(exports["n0_2"] / f"level_{n}.dot")
            assert (graph.vcount, graph.ecount) == exports["counts2"][n]
        assert exports["counts2"][1] == (2, 1)
        assert exports["counts2"][2] == (3, 2)
        assert exports["counts2"][3] == (5, 4)
        assert exports["counts2"][4] == (12, 16)

    def test_labels_are_canonical_forms(self, exports):
        graph = read_dot(exports["n0_2"] / "level_2.dot")
        assert set(graph.labels.values()) == {"0", "1", "{0,1}"}

    def test_garbled_dot_rejected(self, tmp_path):
        bad = tmp_path / "bad.dot"
        bad.write_text("graph g {\n  0 [label=\"0\"];\n  0 -> 1;\n}\n")
        with pytest.raises(InputError):
            read_dot(bad)

    def test_undeclared_edge_endpoint_rejected(self, tmp_path):
        bad = tmp_path / "bad.dot"
        bad.write_text('graph g {\n  0 [label="0"];\n  0 -- 7;\n}\n')
        with pytest.raises(InputError):
            read_dot(bad)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            read_dot(tmp_path / "absent.dot")


class TestGraphLayout:
    def test_render_counts_reported(self, exports, tmp_path):
        for n in (1, 2, 3, 4):
            spec = FigureSpec(
                kind="graph-layout",
                dot_path=exports["n0_2"] / f"level_{n}.dot",
                out_path=tmp_path / f"g{n}.svg",
                seed=3,
            )
            report = render(spec)
            assert (report["vcount"], report["ecount"]) == exports["counts2"][n]
            assert (tmp_path / f"g{n}.svg").exists()

    def test_spring_layout_deterministic(self, exports, tmp_path):
        spec = lambda name: FigureSpec(
            kind="graph-layout",
            dot_path=exports["n0_2"] / "level_4.dot",
            out_path=tmp_path / name,
            seed=11,
        )
        a = render(spec("a.svg"))
        b = render(spec("b.svg"))
        assert a["positions"] == b["positions"]
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_delta_positions_put_leaves_on_corners(self, exports, tmp_path):
        spec = FigureSpec(
            kind="graph-layout",
            dot_path=exports["n0_3"] / "level_3.dot",
            delta_csv=exports["n0_3"] / "delta_n3.csv",
            out_path=tmp_path / "g3_simplex.svg",
        )
        report = render(spec)
        assert report["positioning"] == "simplex"
        corners = simplex_corners(3)
        by_label = {report["labels"][node]: pos for node, pos in report["positions"].items()}
        for i in range(3):
            assert by_label[str(i)] == corners[i]

    def test_delta_positions_are_exact_affine_combinations(self, exports, tmp_path):
        coords = read_delta_csv(exports["n0_3"] / "delta_n3.csv")
        spec = FigureSpec(
            kind="graph-layout",
            dot_path=exports["n0_3"] / "level_3.dot",
            delta_csv=exports["n0_3"] / "delta_n3.csv",
            out_path=tmp_path / "g3.svg",
        )
        report = render(spec)
        corners = simplex_corners(3)
        for node, label in report["labels"].items():
            cs = coords[label]
            want = (
                sum(float(c) * x for c, (x, _) in zip(cs, corners)),
                sum(float(c) * y for c, (_, y) in zip(cs, corners)),
            )
            assert report["positions"][node] == want

    def test_mismatched_delta_csv_rejected(self, exports, tmp_path):
        with pytest.raises(InputError):
            render(FigureSpec(
                kind="graph-layout",
                dot_path=exports["n0_2"] / "level_4.dot",
                delta_csv=exports["n0_3"] / "delta_n3.csv",
                out_path=tmp_path / "x.svg",
            ))

    def test_png_output(self, exports, tmp_path):
        report = render(FigureSpec(
            kind="graph-layout",
            dot_path=exports["n0_2"] / "level_3.dot",
            out_path=tmp_path / "g3.png",
        ))
        assert (tmp_path / "g3.png").stat().st_size > 0


class TestRatioTrend:
    def test_render(self, exports, tmp_path):
        report = render(FigureSpec(
            kind="ratio-trend",
            ratio_csv=exports["n0_2"] / "ratios_k4.csv",
            out_path=tmp_path / "trend.svg",
        ))
        assert report["rows"] == 3
        assert report["ns"] == [4, 5, 6]
        assert (tmp_path / "trend.svg").exists()

    def test_empty_csv_rejected_no_file(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("n,m,vcount,ecount,ratio\n")
        out = tmp_path / "never.svg"
        with pytest.raises(InputError):
            render(FigureSpec(kind="ratio-trend", ratio_csv=empty, out_path=out))
        assert not out.exists()


class TestSeparationHistogram:
    def test_render(self, exports, tmp_path):
        report = render(FigureSpec(
            kind="separation-histogram",
            certificate=exports["n0_2"] / "separated_n5_m6.json",
            out_path=tmp_path / "sep.svg",
        ))
        assert report["cardinality"] == 3
        assert report["pairs"] == 3  # C(3, 2)


class TestSpecValidation:
    def test_unknown_kind(self, tmp_path):
        with pytest.raises(InputError):
            FigureSpec(kind="pie-chart", out_path=tmp_path / "x.svg")

    def test_kind_requires_matching_input(self, tmp_path):
        with pytest.raises(InputError):
            FigureSpec(kind="graph-layout", out_path=tmp_path / "x.svg")
        with pytest.raises(InputError):
            FigureSpec(kind="ratio-trend", out_path=tmp_path / "x.svg")
        with pytest.raises(InputError):
            FigureSpec(kind="separation-histogram", out_path=tmp_path / "x.svg")


class TestCli:
    def test_graph_layout(self, exports, tmp_path):
        out = tmp_path / "g4.svg"
        res = run_figs("--kind", "graph-layout", "--dot",
                       str(exports["n0_2"] / "level_4.dot"), "--out", str(out))
        assert res.returncode == 0, res.stderr
        assert "vcount=12" in res.stdout and "ecount=16" in res.stdout
        assert out.exists()

    def test_missing_input_nonzero_exit(self, tmp_path):
        res = run_figs("--kind", "graph-layout", "--dot",
                       str(tmp_path / "absent.dot"), "--out", str(tmp_path / "x.svg"))
        assert res.returncode == 1
        assert "input error" in res.stderr
        assert not (tmp_path / "x.svg").exists()

    def test_histogram_cli(self, exports, tmp_path):
        out = tmp_path / "sep.png"
        res = run_figs("--kind", "separation-histogram", "--certificate",
                       str(exports["n0_2"] / "separated_n5_m6.json"), "--out", str(out))
        assert res.returncode == 0
        assert out.exists()
