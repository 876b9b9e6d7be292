"""Seeded ensemble experiments: build, diagonalize, evolve, reduce.

Realization r draws its RNG stream from SeedSequence(master_seed,
spawn_key=(r,)), so results are bit-identical for a given (config,
master_seed) regardless of worker count: realizations may run in
parallel but the reduction is a sequential fold in index order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import __version__
from .basis import (center_index, classify, direct_coupling_count,
                    effective_class_count, enumerate_basis)
from .cascade import entropy_one_class, ipr_one_class, survival_theory
from .evolution import diagonalize, evolve_many, stationary_distribution
from .hamiltonians import (TbriParams, WbrmParams, build_tbri, build_wbrm,
                           delta_E_numeric, gamma0,
                           sample_single_particle_energies)
from .observables import (entropy, gaussian, ipr, lorentzian, packet_width,
                          sf_bandwidth, smoothed_density)
from scipy.optimize import curve_fit

WORKERS_ENV = "FOCKCASCADE_WORKERS"

OUTPUT_KINDS = ("observables", "snapshots", "strength_function",
                "theory_overlays")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    model: str                       # "tbri" | "wbrm"
    t_max: float
    n_points: int = 200
    spacing: str = "linear"          # "linear" | "log"
    N_g: int = 1
    master_seed: int = 0
    initial_index: str = "center"    # "center" or an explicit index
    outputs: tuple = ("observables", "theory_overlays")
    snapshot_times: tuple = ()
    # tbri parameters
    n: int | None = None
    m: int | None = None
    V0sq: float | None = None
    d0: float = 1.0
    # wbrm parameters
    N: int | None = None
    b: int | None = None
    D: float | None = None
    V0: float | None = None

    def __post_init__(self):
        if self.model not in ("tbri", "wbrm"):
            raise ConfigError(f"unknown model {self.model!r}")
        if self.t_max <= 0:
            raise ConfigError("t_max must be > 0")
        if self.N_g < 1:
            raise ConfigError("N_g must be >= 1")
        if self.spacing not in ("linear", "log"):
            raise ConfigError(f"unknown spacing {self.spacing!r}")
        for kind in self.outputs:
            if kind not in OUTPUT_KINDS:
                raise ConfigError(f"unknown output kind {kind!r}")
        if self.model == "tbri":
            missing = [k for k in ("n", "m", "V0sq")
                       if getattr(self, k) is None]
        else:
            missing = [k for k in ("N", "b", "D", "V0")
                       if getattr(self, k) is None]
        if missing:
            raise ConfigError(
                f"model {self.model!r} requires keys: {', '.join(missing)}")
        for tt in self.snapshot_times:
            if not 0 <= tt <= self.t_max:
                raise ConfigError(f"snapshot time {tt} outside [0, t_max]")

    @property
    def size(self) -> int:
        if self.model == "tbri":
            return math.comb(self.m, self.n)
        return self.N

    def resolve_initial(self) -> int:
        if self.initial_index == "center":
            return center_index(self.size)
        idx = int(self.initial_index)
        if not 0 <= idx < self.size:
            raise ConfigError(f"initial index {idx} out of range")
        return idx


_INT_KEYS = {"n_points", "N_g", "master_seed", "n", "m", "N", "b"}
_FLOAT_KEYS = {"t_max", "V0sq", "d0", "D", "V0"}
_STR_KEYS = {"model", "spacing", "initial_index"}
_LIST_KEYS = {"outputs", "snapshot_times"}


def parse_config(path) -> ExperimentConfig:
    """Key = value text file; one key per line, '#' comments.

    Every key must name an ExperimentConfig field; unknown keys are errors.
    """
    known = {f.name for f in fields(ExperimentConfig)}
    kwargs = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in kwargs:
                raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
            if key in _INT_KEYS:
                kwargs[key] = int(value)
            elif key in _FLOAT_KEYS:
                kwargs[key] = float(value)
            elif key == "outputs":
                kwargs[key] = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "snapshot_times":
                kwargs[key] = tuple(float(v) for v in value.split(",") if v.strip())
            else:
                kwargs[key] = value
    return ExperimentConfig(**kwargs)


def time_grid(config: ExperimentConfig) -> np.ndarray:
    if config.spacing == "linear":
        return np.linspace(0.0, config.t_max, config.n_points)
    # three decades up to t_max for short-time (ballistic) fits
    return np.geomspace(config.t_max * 1e-3, config.t_max, config.n_points)


# ---------------------------------------------------------------------------
# Single realization

def build_realization(config: ExperimentConfig, r: int):
    """Hamiltonian plus bookkeeping for realization r (deterministic)."""
    seed_seq = np.random.SeedSequence(config.master_seed, spawn_key=(r,))
    rng = np.random.default_rng(seed_seq)
    if config.model == "tbri":
        eps = sample_single_particle_energies(config.m, config.d0, rng)
        basis = enumerate_basis(config.n, config.m, eps)
        params = TbriParams(n=config.n, m=config.m, V0sq=config.V0sq,
                            d0=config.d0)
        ham = build_tbri(params, basis, rng)
    else:
        params = WbrmParams(N=config.N, b=config.b, D=config.D, V0=config.V0)
        ham = build_wbrm(params, rng)
    return ham


def _run_one(args):
    config, r, times = args
    ham = build_realization(config, r)
    initial = config.resolve_initial()
    spec = diagonalize(ham)
    N = ham.size

    if config.model == "tbri":
        energies = ham.basis.energies
        g0 = gamma0(ham, initial)
    else:
        energies = np.diag(ham.matrix).copy()
        g0 = gamma0(ham)
    d_e = delta_E_numeric(ham, initial)

    amp = evolve_many(spec, initial, times)
    w = np.abs(amp) ** 2
    indices = np.arange(N)
    n_t = times.size
    W0 = w[initial].copy()
    S = np.empty(n_t)
    lipr = np.empty(n_t)
    width = np.empty(n_t)
    for i in range(n_t):
        col = w[:, i]
        col = col / col.sum()      # strip 1e-14 unitarity residue
        S[i] = entropy(col)
        lipr[i] = ipr(col)
        width[i] = packet_width(col, indices, initial)

    out = {
        "W0": W0, "S": S, "Npc": np.exp(S), "l_ipr": lipr, "width": width,
        "gamma0": g0, "delta_E": d_e, "initial": initial, "size": N,
    }
    if "strength_function" in config.outputs:
        w0k = spec.eigenvectors[initial] ** 2
        e0 = float(np.sum(w0k * spec.eigenvalues))
        out["sf_centers"] = spec.eigenvalues - e0
        out["sf_weights"] = w0k
        out["sf_bandwidth"] = sf_bandwidth(spec, g0)
    out["stationary"] = stationary_distribution(spec, initial)
    out["energies"] = energies
    return out


def _worker_count(config: ExperimentConfig, workers) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(workers, config.N_g))


@dataclass(eq=False)
class ExperimentResult:
    config: ExperimentConfig
    metadata: list
    tables: dict                      # name -> {column -> array}
    realizations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def _fit_gamma_p(times, W0, g0, d_e):
    """Exponential-decay rate of the numeric W0 on [t_c, 4/Gamma_0]."""
    t_c = g0 / d_e ** 2
    sel = (times >= t_c) & (times <= 4.0 / g0) & (W0 > 1e-12)
    if sel.sum() < 3:
        return g0
    slope = np.polyfit(times[sel], np.log(W0[sel]), 1)[0]
    return float(-slope)


def run(config: ExperimentConfig, workers=None) -> ExperimentResult:
    """Run the ensemble and reduce to tables with theory overlays."""
    times = time_grid(config)
    jobs = [(config, r, times) for r in range(config.N_g)]
    n_workers = _worker_count(config, workers)
    if n_workers == 1 or config.N_g == 1:
        results = [_run_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_run_one, jobs))

    def mean_of(key):
        return np.mean([res[key] for res in results], axis=0)

    W0 = mean_of("W0")
    S = mean_of("S")
    Npc = mean_of("Npc")
    lipr = mean_of("l_ipr")
    width = mean_of("width")
    for res in results:
        for key in ("W0", "S", "Npc", "l_ipr", "width"):
            if not np.all(np.isfinite(res[key])):
                raise RuntimeError(
                    f"non-finite {key} in realization {results.index(res)}")

    g0 = float(np.mean([res["gamma0"] for res in results]))
    d_e = float(np.mean([res["delta_E"] for res in results]))
    N = results[0]["size"]
    if config.model == "tbri":
        M = direct_coupling_count(config.n, config.m)
    else:
        M = 2 * config.b
    n_c = effective_class_count(N, M)

    # saturation plateaus measured over the last quarter of the grid
    tail = times >= times[0] + 0.75 * (times[-1] - times[0])
    npc_inf = float(np.mean(Npc[tail]))
    ipr_inf = float(np.mean(lipr[tail]))

    stats = {"gamma0": g0, "delta_E": d_e, "M": M, "n_c": n_c,
             "npc_inf": npc_inf, "ipr_inf": ipr_inf, "N": N}

    columns = {"t": times, "W0": W0, "S": S, "Npc": Npc,
               "l_ipr": lipr, "width": width}
    if "theory_overlays" in config.outputs:
        if g0 < d_e:
            gamma_p = g0           # Breit-Wigner regime: Gamma_p = Gamma_0
        else:
            gamma_p = _fit_gamma_p(times, W0, g0, d_e)
        slope = (g0 if g0 < d_e else d_e) * math.log(M)
        stats["gamma_p"] = gamma_p
        stats["S_slope"] = slope
        columns["W0_theory"] = survival_theory(times, gamma_p, d_e)
        columns["S_theory"] = entropy_one_class(W0, npc_inf)
        columns["S_linear"] = slope * times
        columns["ipr_theory"] = ipr_one_class(W0, ipr_inf)

    metadata = config_echo(config) + [
        f"code_version = {__version__}",
        "seed_scheme = SeedSequence(master_seed, spawn_key=(r,)) for "
        f"r in 0..{config.N_g - 1}",
    ] + [f"stat {k} = {v}" for k, v in stats.items()]

    tables = {"observables": columns}
    if "strength_function" in config.outputs:
        tables["strength_function"] = _strength_table(results, stats, metadata)
    return ExperimentResult(config=config, metadata=metadata, tables=tables,
                            realizations=results, stats=stats)


def _strength_table(results, stats, metadata):
    """Ensemble-mean smoothed LDOS vs E - E0, with both shape fits."""
    h = float(np.mean([res["sf_bandwidth"] for res in results]))
    span = 6.0 * max(stats["delta_E"], stats["gamma0"], h)
    grid = np.linspace(-span, span, 800)
    P0 = np.mean([smoothed_density(res["sf_weights"], res["sf_centers"],
                                   grid, h) for res in results], axis=0)
    lp, _ = curve_fit(lorentzian, grid, P0, p0=[0.0, stats["delta_E"]],
                      maxfev=20000)
    gp, _ = curve_fit(gaussian, grid, P0, p0=[0.0, stats["delta_E"]],
                      maxfev=20000)
    res_l = float(np.sum((lorentzian(grid, *lp) - P0) ** 2))
    res_g = float(np.sum((gaussian(grid, *gp) - P0) ** 2))
    stats["sf_gamma_fit"] = abs(float(lp[1]))
    stats["sf_sigma_fit"] = abs(float(gp[1]))
    stats["sf_lorentz_residual"] = res_l
    stats["sf_gauss_residual"] = res_g
    metadata.append(f"stat sf_gamma_fit = {stats['sf_gamma_fit']}")
    metadata.append(f"stat sf_sigma_fit = {stats['sf_sigma_fit']}")
    metadata.append(f"stat sf_lorentz_residual = {res_l}")
    metadata.append(f"stat sf_gauss_residual = {res_g}")
    return {"E": grid, "P0": P0,
            "lorentz_fit": lorentzian(grid, *lp),
            "gauss_fit": gaussian(grid, *gp)}


def config_echo(config: ExperimentConfig) -> list:
    lines = []
    for f in fields(config):
        v = getattr(config, f.name)
        if v is None:
            continue
        if isinstance(v, tuple):
            v = ", ".join(str(x) for x in v)
        lines.append(f"config {f.name} = {v}")
    return lines


# ---------------------------------------------------------------------------
# Snapshots (single realization; ensemble averaging would wash out the
# Fock-space holes)

def snapshot_dump(config: ExperimentConfig, snapshot_times=None) -> dict:
    """Per-time w_f tables for realization 0: f, E_f, w_f, class_of."""
    times = snapshot_times if snapshot_times is not None else config.snapshot_times
    if not len(times):
        raise ConfigError("no snapshot times given")
    ham = build_realization(config, 0)
    initial = config.resolve_initial()
    spec = diagonalize(ham)
    N = ham.size

    if config.model == "tbri":
        energies = ham.basis.energies
        class_of = classify(ham.basis, initial).class_of
    else:
        energies = np.diag(ham.matrix).copy()
        # one-class model: everything inside the band is directly coupled
        class_of = np.ones(N, dtype=np.int64)
        class_of[initial] = 0

    amp = evolve_many(spec, initial, np.asarray(times, dtype=float))
    tables = {}
    for i, t in enumerate(times):
        w = np.abs(amp[:, i]) ** 2
        tables[f"snapshot_t{t:g}"] = {
            "f": np.arange(N), "E_f": energies, "w_f": w,
            "class_of": class_of,
        }
    return tables


def _distribution_one(args):
    config, r, t = args
    ham = build_realization(config, r)
    initial = config.resolve_initial()
    spec = diagonalize(ham)
    amp = evolve_many(spec, initial, np.asarray([t]))
    if config.model == "tbri":
        energies = ham.basis.energies
    else:
        energies = np.diag(ham.matrix).copy()
    return (np.abs(amp[:, 0]) ** 2,
            stationary_distribution(spec, initial),
            energies)


def mean_distribution(config: ExperimentConfig, t: float, workers=None) -> dict:
    """Ensemble-mean w_f at a single time plus the stationary profile."""
    jobs = [(config, r, t) for r in range(config.N_g)]
    n_workers = _worker_count(config, workers)
    if n_workers == 1 or config.N_g == 1:
        results = [_distribution_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_distribution_one, jobs))
    w_mean = np.mean([res[0] for res in results], axis=0)
    ws_mean = np.mean([res[1] for res in results], axis=0)
    energies = results[0][2]
    return {"f": np.arange(w_mean.size), "E_f": energies,
            "w_f": w_mean, "w_stationary": ws_mean}
