import matplotlib.pyplot as plt
import numpy as np
import pytest
from PIL import Image

from plotkit import FigureSpec, SchemaError, build_figure, render
from plotkit.figures import _edges, _gridded


def spec_for(kind, inputs, out, **kw):
    return FigureSpec(kind=kind, inputs=tuple(inputs), output=out, **kw)


# ---------------------------------------------------------------- FigureSpec

def test_rejects_unknown_kind(sweep_csvs, tmp_path):
    with pytest.raises(ValueError, match="unknown figure kind"):
        spec_for("pie", sweep_csvs[:1], tmp_path / "x.png")


def test_rejects_empty_inputs(tmp_path):
    with pytest.raises(ValueError, match="at least one input"):
        spec_for("cdf", (), tmp_path / "x.png")


def test_rejects_missing_input(tmp_path):
    with pytest.raises(ValueError, match="input file not found"):
        spec_for("cdf", (tmp_path / "ghost.csv",), tmp_path / "x.png")


def test_rejects_label_count_mismatch(cdf_csvs, tmp_path):
    with pytest.raises(ValueError, match="4 labels for 2 inputs"):
        spec_for("cdf", cdf_csvs[:2], tmp_path / "x.png",
                 labels=("a", "b", "c", "d"))


def test_accepts_string_paths(cdf_csvs, tmp_path):
    spec = spec_for("cdf", (str(cdf_csvs[0]),), str(tmp_path / "x.png"))
    assert spec.inputs[0] == cdf_csvs[0]


# ------------------------------------------------------------- grid pivoting

def test_gridded_pivots_and_leaves_holes():
    table = {
        "x_m": np.array([0.0, 1.0, 0.0]),
        "y_m": np.array([0.0, 0.0, 2.0]),
        "snr_gain_db": np.array([5.0, 6.0, 7.0]),
    }
    xs, ys, values = _gridded(table)
    assert xs.tolist() == [0.0, 1.0] and ys.tolist() == [0.0, 2.0]
    assert values[0, 0] == 5.0 and values[0, 1] == 6.0 and values[1, 0] == 7.0
    assert np.isnan(values[1, 1])  # the missing corner stays blank


def test_edges_bracket_centers():
    assert _edges(np.array([0.0, 1.0, 3.0])).tolist() == [-0.5, 0.5, 2.0, 4.0]
    assert _edges(np.array([7.0])).tolist() == [6.5, 7.5]


# ------------------------------------------------------------------ heatmaps

def panel_axes(fig):
    return [ax for ax in fig.axes if ax.get_label() != "<colorbar>"]


def test_four_panel_heatmap_shares_color_scale(sweep_csvs, tmp_path):
    spec = spec_for("heatmap", sweep_csvs, tmp_path / "grid.png")
    fig = build_figure(spec)
    try:
        meshes = [ax.collections[0] for ax in panel_axes(fig)]
        assert len(meshes) == 4
        clims = {m.get_clim() for m in meshes}
        assert len(clims) == 1  # one shared scale across all panels
    finally:
        plt.close(fig)


def test_four_panel_heatmap_renders_2x2(sweep_csvs, tmp_path):
    out = render(spec_for("heatmap", sweep_csvs, tmp_path / "grid.png"))
    with Image.open(out) as img:
        width, height = img.size
    # 2 columns of 3.4" plus colorbar margin, 2 rows of 3.0", at 150 dpi
    assert (width, height) == (1155, 900)


def test_single_point_heatmap_renders(tmp_path):
    csv = tmp_path / "one.csv"
    csv.write_text("x_m,y_m,snr_gain_db\n3,4,17.5\n")
    out = render(spec_for("heatmap", (csv,), tmp_path / "one.png"))
    assert out.stat().st_size > 0


def test_flat_map_gets_nonzero_color_range(tmp_path):
    csv = tmp_path / "flat.csv"
    csv.write_text("x_m,y_m,snr_gain_db\n0,0,2\n1,0,2\n")
    fig = build_figure(spec_for("heatmap", (csv,), tmp_path / "flat.png"))
    try:
        lo, hi = fig.axes[0].collections[0].get_clim()
        assert lo < 2.0 < hi
    finally:
        plt.close(fig)


def test_three_inputs_hide_the_spare_panel(sweep_csvs, tmp_path):
    fig = build_figure(spec_for("heatmap", sweep_csvs[:3], tmp_path / "x.png"))
    try:
        panels = panel_axes(fig)
        assert len(panels) == 4  # 2x2 layout with one blank slot
        assert sum(ax.get_visible() for ax in panels) == 3
    finally:
        plt.close(fig)


# -------------------------------------------------------------- curve kinds

def test_cdf_overlays_every_input_with_legend(cdf_csvs, tmp_path):
    labels = ("EC", "EB", "CC", "CB")
    fig = build_figure(spec_for("cdf", cdf_csvs, tmp_path / "cdf.png", labels=labels))
    try:
        ax = fig.axes[0]
        assert len(ax.lines) == 4
        legend_texts = tuple(t.get_text() for t in ax.get_legend().get_texts())
        assert legend_texts == labels
        for line in ax.lines:
            assert np.all(np.diff(line.get_ydata()) >= 0)
    finally:
        plt.close(fig)


def test_level_geometry_cdf_pairs_coincide(cdf_csvs, tmp_path):
    # on level geometry the element- and column-level curves of the same
    # quantization overlap visually; measure the horizontal gap between
    # the step curves at common fraction levels
    from plotkit import read_table

    curves = {p.stem.rsplit("_", 1)[-1]: read_table(p, "cdf") for p in cdf_csvs}
    q = np.linspace(0.05, 0.95, 181)

    def gain_at(name):
        t = curves[name]
        return np.interp(q, t["cum_fraction"], t["snr_gain_db"])

    for a, b in (("element-continuous", "column-continuous"),
                 ("element-binary", "column-binary")):
        assert np.abs(gain_at(a) - gain_at(b)).max() < 0.25
    # while the two quantization levels stay visibly apart
    assert np.median(np.abs(gain_at("element-continuous") - gain_at("element-binary"))) > 1.0

    out = render(spec_for("cdf", cdf_csvs, tmp_path / "pairs.png"))
    assert out.stat().st_size > 0


def test_default_labels_are_file_stems(cdf_csvs, tmp_path):
    fig = build_figure(spec_for("cdf", cdf_csvs[:1], tmp_path / "cdf.png"))
    try:
        texts = [t.get_text() for t in fig.axes[0].get_legend().get_texts()]
        assert texts == [cdf_csvs[0].stem]
    finally:
        plt.close(fig)


def test_line_plot_tracks_profile(profile_csv, tmp_path):
    fig = build_figure(spec_for("line", (profile_csv,), tmp_path / "p.png"))
    try:
        line = fig.axes[0].lines[0]
        assert line.get_xdata().size == 8
        assert fig.axes[0].get_xlabel() == "row index"
        assert fig.axes[0].get_ylabel() == "phase [rad]"
    finally:
        plt.close(fig)


def test_hist_draws_one_bar_per_bin(hist_csv, tmp_path):
    fig = build_figure(spec_for("hist", (hist_csv,), tmp_path / "h.png"))
    try:
        assert len(fig.axes[0].patches) == 8
    finally:
        plt.close(fig)


def test_bar_labels_methods(avg_csv, tmp_path):
    from plotkit import read_table

    methods = list(read_table(avg_csv, "bar")["method"])
    fig = build_figure(spec_for("bar", (avg_csv,), tmp_path / "b.png"))
    try:
        ax = fig.axes[0]
        ticks = [t.get_text() for t in ax.get_xticklabels()]
        assert ticks == methods
        assert len(ax.patches) == len(ticks)
        assert ax.get_title() == "10 receivers, seed 0"
    finally:
        plt.close(fig)


def test_bar_rejects_mismatched_method_lists(avg_csv, tmp_path):
    other = tmp_path / "other.csv"
    other.write_text("method,mean_snr_db,n_ue,seed\nonly-one,3.0,10,0\n")
    with pytest.raises(ValueError, match="same methods"):
        build_figure(spec_for("bar", (avg_csv, other), tmp_path / "b.png"))


def test_axis_label_overrides(cdf_csvs, tmp_path):
    fig = build_figure(spec_for("cdf", cdf_csvs[:1], tmp_path / "c.png",
                                xlabel="gain", ylabel="F(x)", title="coverage"))
    try:
        assert fig.axes[0].get_xlabel() == "gain"
        assert fig.axes[0].get_ylabel() == "F(x)"
        assert fig._suptitle.get_text() == "coverage"
    finally:
        plt.close(fig)


# ----------------------------------------------------------------- rendering

def test_render_is_deterministic(sweep_csvs, cdf_csvs, tmp_path):
    for kind, inputs in (("heatmap", sweep_csvs), ("cdf", cdf_csvs)):
        a = render(spec_for(kind, inputs, tmp_path / f"{kind}_a.png"))
        b = render(spec_for(kind, inputs, tmp_path / f"{kind}_b.png"))
        assert a.read_bytes() == b.read_bytes()


def test_render_leaves_inputs_untouched(cdf_csvs, tmp_path):
    before = cdf_csvs[0].read_bytes()
    render(spec_for("cdf", cdf_csvs[:1], tmp_path / "c.png"))
    assert cdf_csvs[0].read_bytes() == before


def test_render_closes_its_figure(cdf_csvs, tmp_path):
    open_before = set(plt.get_fignums())
    render(spec_for("cdf", cdf_csvs[:1], tmp_path / "c.png"))
    assert set(plt.get_fignums()) == open_before


def test_render_schema_mismatch_names_expected_header(sweep_csvs, tmp_path):
    spec = spec_for("cdf", sweep_csvs[:1], tmp_path / "x.png")
    with pytest.raises(SchemaError, match="expected header snr_gain_db,cum_fraction"):
        render(spec)
