"""CSV data behind the comparison figures (Barker nesting vs CDOS)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import metrics, sac
from .core import generate_ccc
from .extend import barker_extend, cdos_extend, is_feasible, plan_length
from .formats import fraction_decimal, metric_csv, profile_csv

__all__ = ["FigureData", "FIGURES", "build_figure", "POWERS_OF_TWO"]

POWERS_OF_TWO = (2, 4, 8, 16, 32, 64, 128)
DEFAULT_BASE = (1, 1)
BEACON_BASE = (2, 1)


@dataclass
class FigureData:
    name: str
    files: dict[str, str] = field(default_factory=dict)
    summary: list[str] = field(default_factory=list)


def _base_note(m, n_stages, set_index=0):
    return f"base set: m={m} (M={2 ** m}), n_stages={n_stages} (L={(2 ** m) ** n_stages}), set_index={set_index}"


def _profile_entry(fig, fname, ext, label, base):
    prof = sac(ext)
    met = metrics(prof)
    fig.files[fname] = profile_csv(
        prof,
        comments=[
            _base_note(*base),
            f"{label}: multiplier={ext.multiplier} length={ext.length} smr={met.smr}",
        ],
    )
    fig.summary.append(
        f"{label}: length {ext.multiplier}L smr={met.smr} ({fraction_decimal(met.smr)})"
    )
    return met


def _fig1() -> FigureData:
    fig = FigureData("fig1")
    base = generate_ccc(*DEFAULT_BASE)[0]
    _profile_entry(fig, "fig1_barker4.csv", barker_extend(base, plan_length(4)), "barker 4", DEFAULT_BASE)
    _profile_entry(fig, "fig1_cdos4.csv", cdos_extend(base, 2), "cdos 4", DEFAULT_BASE)
    return fig


def _fig2() -> FigureData:
    fig = FigureData("fig2")
    base = generate_ccc(*DEFAULT_BASE)[0]
    rows = []
    worst = None
    for n in range(2, 129):
        if not is_feasible(n):
            continue
        smr = metrics(sac(barker_extend(base, plan_length(n)))).smr
        rows.append((n, "smr_barker", smr))
        worst = smr if worst is None else max(worst, smr)
    for q, n in enumerate(POWERS_OF_TWO, 1):
        rows.append((n, "smr_cdos", metrics(sac(cdos_extend(base, q))).smr))
    fig.files["fig2_smr.csv"] = metric_csv(rows, comments=[_base_note(*DEFAULT_BASE), "planner: default"])
    n_barker = sum(1 for r in rows if r[1] == "smr_barker")
    fig.summary.append(f"barker multipliers: {n_barker}, max smr={worst}")
    return fig


def _fig3() -> FigureData:
    fig = FigureData("fig3")
    base = generate_ccc(*BEACON_BASE)[0]
    for q in (3, 4):
        _profile_entry(fig, f"fig3_cdos{2 ** q}.csv", cdos_extend(base, q), f"cdos {2 ** q}", BEACON_BASE)
    for n in (6, 10):
        _profile_entry(fig, f"fig3_barker{n}.csv", barker_extend(base, plan_length(n)), f"barker {n}", BEACON_BASE)
    return fig


def _fig4() -> FigureData:
    fig = FigureData("fig4")
    base = generate_ccc(*DEFAULT_BASE)[0]
    for n in (7, 11):
        _profile_entry(fig, f"fig4_barker{n}.csv", barker_extend(base, plan_length(n)), f"barker {n}", DEFAULT_BASE)
    return fig


def _fig5() -> FigureData:
    fig = FigureData("fig5")
    base = generate_ccc(*DEFAULT_BASE)[0]
    rows = []
    for q, n in enumerate(POWERS_OF_TWO, 1):
        c = metrics(sac(cdos_extend(base, q)))
        b = metrics(sac(barker_extend(base, plan_length(n))))
        rows += [
            (n, "signed_sum_ratio_cdos", c.signed_sum_ratio),
            (n, "abs_sum_ratio_cdos", c.abs_sum_ratio),
            (n, "signed_sum_ratio_barker", b.signed_sum_ratio),
            (n, "abs_sum_ratio_barker", b.abs_sum_ratio),
        ]
        fig.summary.append(
            f"multiplier {n}: cdos abs={fraction_decimal(c.abs_sum_ratio)} "
            f"barker abs={fraction_decimal(b.abs_sum_ratio)}"
        )
    fig.files["fig5_sidelobe_sums.csv"] = metric_csv(
        rows, comments=[_base_note(*DEFAULT_BASE), "sums over all nonzero lags, normalized by lag 0"]
    )
    return fig


FIGURES = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5}


def build_figure(name: str) -> FigureData:
    if name not in FIGURES:
        raise ValueError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}")
    return FIGURES[name]()
