"""Canonical table recipes for the twelve reference figures.

Each entry reproduces the data behind one figure of the study: survival
regimes (1), asymptotic distributions (2-3), entropy growth (4-5),
width/N_pc/IPR time series (6, 8-10, 12) and single-realization packet
snapshots (7, 11).  `figures_data` writes the tables under
<outdir>/figNN/<table>.csv; the rendering frontend consumes only these
files.
"""

from __future__ import annotations

import os

import numpy as np

from .cascade import survival_theory
from .runner import ExperimentConfig, mean_distribution, run, snapshot_dump
from .tables import write_table

ALL_FIGURES = tuple(range(1, 13))

# BW regime of the two-body ensemble (Figs. 2, 4, 6, 7, 8)
_TBRI_BW = dict(model="tbri", n=6, m=12, V0sq=0.003, d0=1.0)
# Gaussian regime (Figs. 3, 5a, 9)
_TBRI_G = dict(model="tbri", n=6, m=12, V0sq=0.083, d0=1.0)
_TBRI_G7 = dict(model="tbri", n=7, m=13, V0sq=0.12, d0=1.0)
_WBRM_BW = dict(model="wbrm", N=924, b=110, D=1.0, V0=1.0)
_WBRM_G = dict(model="wbrm", N=924, b=110, D=1.0, V0=3.0)

_OBS = ("observables", "theory_overlays")


def _cfg(base, N_g, fast_N_g, fast, seed, **kw):
    return ExperimentConfig(N_g=fast_N_g if fast else N_g,
                            master_seed=seed, **base, **kw)


def figures_data(outdir, figures=None, fast=False, workers=None,
                 master_seed=20010321) -> list:
    """Emit the canonical tables; returns the list of written paths."""
    figures = sorted(set(figures or ALL_FIGURES))
    written = []

    def emit(fig, name, columns, metadata=None):
        path = os.path.join(outdir, f"fig{fig:02d}", f"{name}.csv")
        write_table(path, columns, metadata)
        written.append(path)

    def emit_result(fig, result, table="observables"):
        emit(fig, table, result.tables[table], result.metadata)

    cache = {}

    def run_cached(key, cfg):
        if key not in cache:
            cache[key] = run(cfg, workers=workers)
        return cache[key]

    if 1 in figures:
        t = np.linspace(0.0, 2.0, 400)
        gamma_p, delta_e = 0.5, 1.2
        emit(1, "theory", {
            "t": t,
            "W0": survival_theory(t, gamma_p, delta_e),
            "W0_gauss": np.exp(-(delta_e * t) ** 2),
            "W0_exp": np.exp(-gamma_p * t),
        }, [f"gamma_p = {gamma_p}", f"delta_E = {delta_e}",
            f"t_c = {gamma_p / delta_e ** 2}"])

    if 2 in figures:
        cfg = _cfg(_TBRI_BW, 10, 3, fast, master_seed,
                   t_max=40.0, outputs=("observables",))
        emit(2, "distribution", mean_distribution(cfg, 40.0, workers))

    if 3 in figures:
        cfg = _cfg(_TBRI_G, 50, 4, fast, master_seed + 1,
                   t_max=40.0, outputs=("observables",))
        emit(3, "distribution", mean_distribution(cfg, 40.0, workers))

    if 4 in figures or 6 in figures:
        cfg = _cfg(_TBRI_BW, 2, 2, fast, master_seed + 2,
                   t_max=40.0, n_points=200, outputs=_OBS)
        result = run_cached("bw2", cfg)
        if 4 in figures:
            emit_result(4, result)
        if 6 in figures:
            emit_result(6, result)

    if 5 in figures or 9 in figures:
        cfg_a = _cfg(_TBRI_G, 2, 2, fast, master_seed + 3,
                     t_max=10.0, n_points=200, outputs=_OBS)
        result_a = run_cached("g2", cfg_a)
        if 5 in figures:
            emit(5, "observables_a", result_a.tables["observables"],
                 result_a.metadata)
            cfg_b = _cfg(_TBRI_G7, 2, 2, fast, master_seed + 4,
                         t_max=10.0, n_points=200, outputs=_OBS)
            result_b = run(cfg_b, workers=workers)
            emit(5, "observables_b", result_b.tables["observables"],
                 result_b.metadata)
        if 9 in figures:
            emit_result(9, result_a)

    if 7 in figures:
        cfg = _cfg(_TBRI_BW, 1, 1, fast, master_seed + 5,
                   t_max=1.0, outputs=("snapshots",),
                   snapshot_times=(0.2, 0.4, 0.6, 0.8))
        for name, columns in snapshot_dump(cfg).items():
            emit(7, name, columns)

    if 8 in figures:
        cfg = _cfg(_TBRI_BW, 1, 1, fast, master_seed + 6,
                   t_max=40.0, n_points=200, outputs=_OBS)
        emit_result(8, run(cfg, workers=workers))

    if 10 in figures:
        cfg = _cfg(_WBRM_BW, 2, 1, fast, master_seed + 7,
                   t_max=10.0, n_points=256, spacing="log", outputs=_OBS)
        emit_result(10, run(cfg, workers=workers))

    if 11 in figures:
        cfg = _cfg(_WBRM_BW, 1, 1, fast, master_seed + 8,
                   t_max=5.0, outputs=("snapshots",),
                   snapshot_times=(0.01, 0.02, 0.04, 5.0))
        for name, columns in snapshot_dump(cfg).items():
            emit(11, name, columns)

    if 12 in figures:
        cfg = _cfg(_WBRM_G, 2, 1, fast, master_seed + 9,
                   t_max=5.0, n_points=256, spacing="log", outputs=_OBS)
        emit_result(12, run(cfg, workers=workers))

    return written
