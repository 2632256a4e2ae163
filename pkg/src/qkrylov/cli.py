"""Command-line front end.

Subcommands: table1, reconstruct, effdim, spread. Each reads an optional
flat key = value config file, applies flag overrides, runs the experiment,
and writes deterministic CSV output (plus a PNG figure for the curve
reports unless --no-plot). Exit codes: 0 success, 1 validation failure,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .analysis import (
    LAMBDA_DEFAULT,
    count_distinct_eigenvalues,
    effective_dimension_sweep,
    reconstruction_error_experiment,
)
from .evolution import Propagator, basis_state, haar_state
from .hamiltonian import (
    BUILTIN_HAMILTONIANS,
    BUILTIN_ORDER,
    EXPECTED_KRYLOV_DIMENSION,
    build_hamiltonian,
    builtin_hamiltonian,
    canonical_name,
    display_name,
    load_hamiltonian_spec,
)
from .krylov import DEFAULT_DT, default_time_grid, lanczos, sampled_basis, spread_complexity
from .numerics import DEFAULT_EIG_TOL, DEFAULT_RANK_TOL


@dataclass
class RunConfig:
    hamiltonian: str = "H1"
    seed: int = 42
    n_states: int = 10
    n_times: int = 25
    t_max: float = 10.0
    dt: float = DEFAULT_DT
    rank_tol: float = DEFAULT_RANK_TOL
    eig_tol: float = DEFAULT_EIG_TOL
    lam: float = LAMBDA_DEFAULT
    output_dir: Path = Path(".")
    initial_state: str = "haar"  # haar | zero
    effdim_points: int = 200
    effdim_t_max: float = 8.0 * math.pi
    spread_points: int = 500
    spread_t_max: float = 4.0 * math.pi
    plots: bool = True

    def validate(self) -> None:
        for key in ("t_max", "dt", "rank_tol", "eig_tol", "effdim_t_max", "spread_t_max"):
            if getattr(self, key) <= 0.0:
                raise ValueError(f"{key} must be positive")
        for key in ("n_states", "n_times", "effdim_points", "spread_points"):
            if getattr(self, key) < 1:
                raise ValueError(f"{key} must be at least 1")
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lambda must lie in (0, 1), got {self.lam}")
        if self.initial_state not in ("haar", "zero"):
            raise ValueError(f"initial_state must be 'haar' or 'zero', got {self.initial_state!r}")


# config-file key -> (RunConfig field, parser)
_CONFIG_KEYS = {
    "hamiltonian": ("hamiltonian", str),
    "seed": ("seed", int),
    "n_states": ("n_states", int),
    "n_times": ("n_times", int),
    "t_max": ("t_max", float),
    "dt": ("dt", float),
    "rank_tol": ("rank_tol", float),
    "eig_tol": ("eig_tol", float),
    "lambda": ("lam", float),
    "output_dir": ("output_dir", Path),
    "initial_state": ("initial_state", str),
    "effdim_points": ("effdim_points", int),
    "effdim_t_max": ("effdim_t_max", float),
    "spread_points": ("spread_points", int),
    "spread_t_max": ("spread_t_max", float),
}


def parse_config_file(path: str | Path) -> dict:
    """Parse a flat key = value config file ('#' comments, blank lines ok)."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        field_name, cast = _CONFIG_KEYS[key]
        try:
            values[field_name] = cast(value)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: cannot parse {value!r} for key {key!r}") from None
    return values


def _fmt(x: float) -> str:
    """Locale-independent decimal with 13 significant digits."""
    return f"{x:.12e}"


def write_csv_atomic(path: Path, header: str, rows) -> None:
    """Write CSV via a temp file and atomic rename; '\\n' line endings."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = header + "\n" + "".join(",".join(str(c) for c in row) + "\n" for row in rows)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _resolve_hamiltonian(cfg: RunConfig) -> tuple[str, np.ndarray]:
    """Map the config's hamiltonian to (file label, matrix). Builtin names
    win; anything else is tried as a spec-file path."""
    key = canonical_name(cfg.hamiltonian)
    if key in BUILTIN_HAMILTONIANS:
        return key, build_hamiltonian(builtin_hamiltonian(key))
    path = Path(cfg.hamiltonian)
    if path.exists():
        return path.stem, build_hamiltonian(load_hamiltonian_spec(path))
    valid = ", ".join(BUILTIN_ORDER)
    raise ValueError(
        f"unknown Hamiltonian {cfg.hamiltonian!r}: not a builtin ({valid}) and no such spec file"
    )


def _initial_state(cfg: RunConfig, dim: int) -> np.ndarray:
    if cfg.initial_state == "zero":
        return basis_state(dim, 0)
    return haar_state(dim, np.random.default_rng(cfg.seed))


def cmd_table1(cfg: RunConfig) -> int:
    """Grade (sampled basis) and distinct-eigenvalue count for every
    builtin; exit 0 only if all rows match the expected dimensions."""
    rng = np.random.default_rng(cfg.seed)
    rows = []
    mismatches = []
    for name in BUILTIN_ORDER:
        prop = Propagator(build_hamiltonian(builtin_hamiltonian(name)))
        psi0 = haar_state(prop.dim, rng)
        grid = default_time_grid(prop.dim, cfg.dt)
        m = sampled_basis(prop, psi0, time_grid=grid, tol=cfg.rank_tol).grade
        d = count_distinct_eigenvalues(prop.spectral, cfg.eig_tol)
        expected = EXPECTED_KRYLOV_DIMENSION[name]
        match = m == d == expected
        if not match:
            mismatches.append(f"{display_name(name)}: m={m}, d={d}, expected {expected}")
        rows.append((display_name(name), m, d, "true" if match else "false"))
    write_csv_atomic(cfg.output_dir / "table1.csv", "hamiltonian,m,d,match", rows)
    if mismatches:
        for line in mismatches:
            print(f"mismatch: {line}", file=sys.stderr)
        return 1
    return 0


def cmd_reconstruct(cfg: RunConfig) -> int:
    """Averaged reconstruction-error curve r(l) for one Hamiltonian."""
    label, matrix = _resolve_hamiltonian(cfg)
    report = reconstruction_error_experiment(
        matrix,
        n_states=cfg.n_states,
        n_times=cfg.n_times,
        t_max=cfg.t_max,
        seed=cfg.seed,
        dt=cfg.dt,
        rank_tol=cfg.rank_tol,
        eig_tol=cfg.eig_tol,
        name=label,
    )
    rows = [(l, _fmt(mean), _fmt(std)) for l, mean, std in report.r_curve]
    out = cfg.output_dir / f"reconstruct_{label}.csv"
    write_csv_atomic(out, "l,r_mean,r_std", rows)
    if cfg.plots:
        from . import plotting

        ls, means, stds = zip(*report.r_curve)
        plotting.save_reconstruction_plot(label, ls, means, stds, out.with_suffix(".png"))
    return 0


def cmd_effdim(cfg: RunConfig) -> int:
    """Effective-dimension sweep over total evolution times."""
    label, matrix = _resolve_hamiltonian(cfg)
    prop = Propagator(matrix)
    psi0 = _initial_state(cfg, prop.dim)
    T_grid = cfg.effdim_t_max * np.arange(1, cfg.effdim_points + 1) / cfg.effdim_points
    curve = effective_dimension_sweep(
        prop, psi0, T_grid, lam=cfg.lam, rank_tol=cfg.rank_tol, eig_tol=cfg.eig_tol
    )
    rows = [(_fmt(T), _fmt(v)) for T, v in zip(curve.T_values, curve.m_eff_values)]
    out = cfg.output_dir / f"effdim_{label}.csv"
    write_csv_atomic(out, "T,m_eff", rows)
    if cfg.plots:
        from . import plotting

        plotting.save_effdim_plot(
            label, curve.T_values, curve.m_eff_values, curve.m, curve.d, out.with_suffix(".png")
        )
    return 0


def cmd_spread(cfg: RunConfig) -> int:
    """Spread complexity of the evolved state over a time grid."""
    label, matrix = _resolve_hamiltonian(cfg)
    prop = Propagator(matrix)
    psi0 = _initial_state(cfg, prop.dim)
    ld = lanczos(matrix, psi0, tol=cfg.rank_tol)
    t_grid = np.linspace(0.0, cfg.spread_t_max, cfg.spread_points)
    values = [spread_complexity(ld, prop, psi0, float(t)) for t in t_grid]
    rows = [(_fmt(t), _fmt(v)) for t, v in zip(t_grid, values)]
    out = cfg.output_dir / f"spread_{label}.csv"
    write_csv_atomic(out, "t,C_S", rows)
    if cfg.plots:
        from . import plotting

        plotting.save_spread_plot(label, t_grid, values, out.with_suffix(".png"))
    return 0


_COMMANDS = {
    "table1": cmd_table1,
    "reconstruct": cmd_reconstruct,
    "effdim": cmd_effdim,
    "spread": cmd_spread,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkrylov",
        description="Sampled Krylov spaces of quantum time evolution: grade tables, "
        "reconstruction errors, effective dimension, and spread complexity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "table1": "grade vs distinct-eigenvalue summary for the builtin systems",
        "reconstruct": "averaged reconstruction-error curve r(l)",
        "effdim": "effective dimension swept over evolution times",
        "spread": "spread complexity over a time grid",
    }
    for name, desc in descriptions.items():
        p = sub.add_parser(name, help=desc)
        p.add_argument("--config", type=Path, help="flat key = value config file")
        p.add_argument("--hamiltonian", help="builtin name (H1..H4, HI1..HI3) or spec-file path")
        p.add_argument("--seed", type=int)
        p.add_argument("--t-max", dest="t_max", type=float)
        p.add_argument("--dt", type=float)
        p.add_argument("--out", dest="output_dir", type=Path)
        p.add_argument("--initial-state", dest="initial_state", choices=("haar", "zero"))
        p.add_argument("--no-plot", dest="no_plot", action="store_true")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config is not None:
        cfg = replace(cfg, **parse_config_file(args.config))
    overrides = {}
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            overrides[f.name] = value
    cfg = replace(cfg, **overrides)
    if args.no_plot:
        cfg = replace(cfg, plots=False)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
