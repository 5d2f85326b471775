import numpy as np
import pytest

from kioskfigures import FigureError, FigureSpec, KINDS, build_figure, render
from kioskfigures.cli import main


def _spec_for(kind, artifacts, out):
    source = {
        "margin_loss_panels": artifacts["sweep"],
        "customer_increase_panels": artifacts["sweep"],
        "customer_increase_averaged": artifacts["sweep"],
        "margin_loss_averaged": artifacts["report_dir"],
        "profitability_frontier": artifacts["breakeven"],
    }[kind]
    return FigureSpec(kind=kind, inputs=(source,), out=out)


# ---------------------------------------------------------------------------
# the secondary acceptance surface


@pytest.mark.parametrize("kind", KINDS)
def test_all_kinds_render_from_default_artifacts(kind, artifacts, tmp_path):
    out = render(_spec_for(kind, artifacts, tmp_path / f"{kind}.png"))
    assert out.exists()
    assert out.stat().st_size > 0
    print(f"[PASS] render {kind}: {out.stat().st_size} bytes")


def test_frontier_has_exactly_three_lines(artifacts, tmp_path):
    fig = build_figure(_spec_for("profitability_frontier", artifacts, tmp_path / "f.png"))
    (ax,) = fig.axes
    assert len(ax.lines) == 3
    labels = [line.get_label() for line in ax.lines]
    assert any("0.3" in label for label in labels)
    assert any("never profitable" in label for label in labels)
    print(f"[PASS] frontier lines: {labels}")


def test_customer_increase_averaged_max_ordinate(artifacts, tmp_path):
    fig = build_figure(
        _spec_for("customer_increase_averaged", artifacts, tmp_path / "c.png")
    )
    plotted_max = max(
        float(np.nanmax(line.get_ydata())) for ax in fig.axes for line in ax.lines
    )
    assert plotted_max == pytest.approx(6.39, abs=0.05)
    print(f"[PASS] averaged buyer-ratio max ordinate: {plotted_max:.4f}")


# ---------------------------------------------------------------------------
# determinism and hygiene


def test_render_is_deterministic(artifacts, tmp_path):
    spec_a = _spec_for("margin_loss_panels", artifacts, tmp_path / "a.png")
    spec_b = _spec_for("margin_loss_panels", artifacts, tmp_path / "b.png")
    render(spec_a)
    render(spec_b)
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


def test_render_does_not_mutate_inputs(artifacts, tmp_path):
    before = artifacts["sweep"].read_bytes()
    render(_spec_for("customer_increase_panels", artifacts, tmp_path / "x.png"))
    assert artifacts["sweep"].read_bytes() == before


def test_custom_pi_slices(artifacts, tmp_path):
    spec = FigureSpec(
        kind="margin_loss_panels",
        inputs=(artifacts["sweep"],),
        out=tmp_path / "slices.png",
        pi_slices=(0.2, 0.5),
    )
    fig = build_figure(spec)
    assert len(fig.axes) == 3 * 2  # three margins x two requested slices


def test_off_grid_pi_slice_errors(artifacts, tmp_path):
    spec = FigureSpec(
        kind="margin_loss_panels",
        inputs=(artifacts["sweep"],),
        out=tmp_path / "bad.png",
        pi_slices=(0.11,),
    )
    with pytest.raises(FigureError, match="pi=0.11"):
        build_figure(spec)


# ---------------------------------------------------------------------------
# error handling


def test_missing_column_named(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("u,pi,d,m\n0.1,0.1,0.1,0.3\n")
    out = tmp_path / "img.png"
    code = main(["margin_loss_panels", "--in", str(bad), "--out", str(out)])
    assert code == 2
    assert not out.exists()


def test_empty_csv_with_header_errors(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    header = (
        "cell_index,u,pi,d,m,customers,display_users,buyers_baseline,"
        "buyers_display_scenario,buyers_among_display_users,"
        "counterfactual_buyers_among_display_users,margin_sum_baseline,"
        "margin_sum_display_scenario,turnover_baseline,turnover_display_scenario,"
        "r_customers_mc,r_margin_mc,pii,pi_eff,r_customers_analytic,"
        "r_margin_analytic,clamp_active,seed"
    )
    empty.write_text(header + "\n")
    out = tmp_path / "img.png"
    assert main(["margin_loss_panels", "--in", str(empty), "--out", str(out)]) == 2
    assert "no data rows" in capsys.readouterr().err
    assert not out.exists()


def test_missing_file_errors(tmp_path, capsys):
    assert (
        main(
            [
                "profitability_frontier",
                "--in",
                str(tmp_path / "nope.csv"),
                "--out",
                str(tmp_path / "img.png"),
            ]
        )
        == 2
    )
    assert "not found" in capsys.readouterr().err


def test_averaged_requires_report_directory(tmp_path, artifacts, capsys):
    assert (
        main(
            [
                "margin_loss_averaged",
                "--in",
                str(artifacts["sweep"]),
                "--out",
                str(tmp_path / "img.png"),
            ]
        )
        == 2
    )
    assert "report directory" in capsys.readouterr().err


def test_unknown_kind_rejected():
    with pytest.raises(SystemExit) as excinfo:
        main(["heatmap", "--in", "x.csv", "--out", "y.png"])
    assert excinfo.value.code == 2


def test_cli_renders(artifacts, tmp_path, capsys):
    out = tmp_path / "frontier.png"
    assert (
        main(["profitability_frontier", "--in", str(artifacts["breakeven"]), "--out", str(out)])
        == 0
    )
    assert out.exists()
    assert str(out) in capsys.readouterr().out
