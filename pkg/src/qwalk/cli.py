"""
Command-line front end.

Every run is described by a :class:`RunConfig`; ``--save-config`` writes it
as JSON and ``--config`` replays it. Output goes to ``--output`` or, if not
given, to ``$QWALK_OUTPUT_DIR/<command>.<format>`` (default: the current
directory). Angles are given in units of pi.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, coin_classes, coins, graphs, spectral, walk
from .io import distribution_csv, dumps, fmt, write_text

COMMANDS = ("walk", "spectrum", "limit", "periods", "period-scan", "classify", "glued-trees", "sweep")
GRAPHS = ("line", "cycle", "lattice", "glued-trees", "hypercube")
COINS = ("hadamard", "general", "nonuniform", "grover", "dft", "hh", "grover4", "dft4")
LATTICE_INITS = {
    "sym": walk.SYMMETRIC_LATTICE_STATE,
    "sym-grover": walk.GROVER_RING_STATE,
    "sym-dft": walk.DFT_RING_STATE,
}
OUTPUT_ENV = "QWALK_OUTPUT_DIR"


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"--{field.replace('_', '-')}: {message}")
        self.field = field


@dataclass
class RunConfig:
    command: str
    graph: str = "line"
    n: int | None = None
    width: int | None = None
    height: int | None = None
    boundary: str = "open"
    coin: str = "hadamard"
    rho: float = 0.5
    theta_over_pi: float = 0.0
    phi_over_pi: float = 0.0
    delta_over_pi: float | None = None
    eta: float = 1.0
    alpha: float = 0.0
    alpha_over_pi: float | None = None
    init: str | None = None
    steps: int = 100
    T: int = 10000
    omega_max: int | None = None
    n_max: int = 10
    t_probe: int = 20
    samples: int = 1000
    every: int = 1
    seed: int = 0
    output: str | None = None
    format: str = "csv"

    def to_json(self) -> str:
        return dumps(dataclasses.asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration field")
        return cls(**data)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError("command", f"unknown command {self.command!r}")
        if self.graph not in GRAPHS:
            raise ConfigError("graph", f"choose one of {', '.join(GRAPHS)}")
        if self.coin not in COINS:
            raise ConfigError("coin", f"choose one of {', '.join(COINS)}")
        if self.format not in ("csv", "json"):
            raise ConfigError("format", "choose csv or json")
        if not 0.0 <= self.rho <= 1.0:
            raise ConfigError("rho", f"must lie in [0, 1], got {self.rho}")
        if not 0.0 <= self.eta <= 1.0:
            raise ConfigError("eta", f"must lie in [0, 1], got {self.eta}")
        for name in ("steps", "T", "omega_max", "t_probe", "samples", "every"):
            value = getattr(self, name)
            if value is not None and value < (0 if name == "steps" else 1):
                raise ConfigError(name, "must be positive")
        if self.boundary not in [b.value for b in graphs.BoundaryMode]:
            raise ConfigError("boundary", f"unknown boundary {self.boundary!r}")

    # angles in radians
    @property
    def theta(self) -> float:
        return math.pi * (self.delta_over_pi if self.delta_over_pi is not None else self.theta_over_pi)

    @property
    def phi(self) -> float:
        return math.pi * (self.delta_over_pi if self.delta_over_pi is not None else self.phi_over_pi)

    @property
    def alpha_rad(self) -> float:
        return math.pi * self.alpha_over_pi if self.alpha_over_pi is not None else self.alpha


def build_graph(cfg: RunConfig) -> graphs.WalkGraph:
    try:
        if cfg.graph == "line":
            return graphs.make_line(cfg.steps)
        if cfg.graph == "cycle":
            if cfg.n is None:
                raise ConfigError("n", "cycle size required")
            return graphs.make_cycle(cfg.n)
        if cfg.graph == "lattice":
            if cfg.width is None and cfg.height is None and cfg.boundary == "open":
                return graphs.make_open_lattice(cfg.steps)
            if cfg.width is None or cfg.height is None:
                raise ConfigError("width", "lattice needs both --width and --height")
            return graphs.make_lattice2d(cfg.width, cfg.height, cfg.boundary)
        if cfg.graph == "glued-trees":
            return graphs.make_glued_trees(cfg.n if cfg.n is not None else 7, cfg.seed)
        return graphs.make_hypercube(cfg.n if cfg.n is not None else 4)
    except graphs.GraphError as exc:
        raise ConfigError("graph", str(exc)) from exc


def _check_unused_coin_params(cfg: RunConfig) -> None:
    if cfg.coin == "general":
        return
    for name, default in (("rho", 0.5), ("theta_over_pi", 0.0), ("phi_over_pi", 0.0), ("delta_over_pi", None)):
        if getattr(cfg, name) != default:
            raise ConfigError(name, f"only used with --coin general, not {cfg.coin}")


def _two_dim_coin(cfg: RunConfig) -> coins.CoinOperator:
    _check_unused_coin_params(cfg)
    if cfg.coin in ("hadamard", "dft"):
        return coins.make_hadamard_coin()
    if cfg.coin == "general":
        return coins.make_general_coin2(cfg.rho, cfg.theta, cfg.phi)
    if cfg.coin == "nonuniform":
        return coins.make_nonuniform_coin()
    if cfg.coin == "grover":
        return coins.make_grover_coin(2)
    raise ConfigError("coin", f"{cfg.coin} is not a two-dimensional coin")


def build_coin(cfg: RunConfig, g: graphs.WalkGraph) -> walk.CoinField:
    _check_unused_coin_params(cfg)
    if g.kind == "glued_trees":
        if cfg.coin in ("grover", "grover4"):
            return {d: coins.make_grover_coin(d) for d in (2, 3)}
        if cfg.coin in ("dft", "dft4"):
            return {d: coins.make_dft_coin(d) for d in (2, 3)}
        raise ConfigError("coin", "glued trees support grover or dft coins")
    d = g.coin_dim
    if d == 2:
        return _two_dim_coin(cfg)
    if cfg.coin in ("grover", "grover4"):
        return coins.make_grover_coin(d)
    if cfg.coin in ("dft", "dft4"):
        return coins.make_dft_coin(d)
    if cfg.coin == "hh" and d == 4:
        h = coins.make_hadamard_coin()
        return coins.tensor_coin(h, h)
    if cfg.coin == "hadamard" and d == 4:
        h = coins.make_hadamard_coin()
        return coins.tensor_coin(h, h)
    raise ConfigError("coin", f"{cfg.coin} coin does not fit a degree-{d} graph")


def build_initial(cfg: RunConfig, g: graphs.WalkGraph) -> walk.WalkState:
    d = int(g.degree[g.origin])
    if g.kind in ("line", "cycle"):
        if cfg.init is None:
            state = walk.InitialCoinState(cfg.eta, cfg.alpha_rad)
        elif cfg.init.upper() in ("R", "L"):
            state = walk.InitialCoinState(1.0 if cfg.init.upper() == "R" else 0.0)
        elif cfg.init == "sym":
            state = walk.InitialCoinState.from_vector(np.array([1, 1j]) / np.sqrt(2))
        else:
            raise ConfigError("init", "line/cycle accept R, L or sym")
    elif g.kind == "lattice2d":
        name = cfg.init or "sym"
        if name in LATTICE_INITS:
            state = LATTICE_INITS[name]
        elif name.upper() in graphs.LATTICE_PORTS:
            state = walk.lattice_coin_state(name)
        else:
            raise ConfigError("init", f"lattice accepts {', '.join(LATTICE_INITS)} or a port label")
    else:
        state = walk.InitialCoinState.from_vector(np.ones(d) / np.sqrt(d))
    return walk.make_initial_state(g, g.origin, state)


def _output_path(cfg: RunConfig, suffix: str = "") -> Path:
    if cfg.output:
        base = Path(cfg.output)
        return base.with_name(base.stem + suffix + base.suffix) if suffix else base
    root = Path(os.environ.get(OUTPUT_ENV, "."))
    return root / f"{cfg.command}{suffix}.{cfg.format}"


def _moments_for(dist: analysis.Distribution, g: graphs.WalkGraph) -> dict:
    if g.kind in ("line", "cycle"):
        return analysis.moments(dist).to_dict()
    if g.kind == "lattice2d":
        return analysis.lattice_moments(dist).to_dict()
    if g.kind == "hypercube":
        w = np.bincount(g.coords, weights=dist.probs)
        return {"hamming_weight_probability": w.tolist()}
    return {}


def cmd_walk(cfg: RunConfig) -> dict:
    g = build_graph(cfg)
    coin = build_coin(cfg, g)
    state = walk.evolve(build_initial(cfg, g), coin, g, cfg.steps)
    if g.kind == "glued_trees":
        dist = analysis.column_distribution(state)
    else:
        dist = analysis.position_distribution(state)
    report = {"steps": cfg.steps, "graph": g.kind, "moments": _moments_for(dist, g)}
    path = _output_path(cfg)
    if cfg.format == "csv":
        write_text(path, distribution_csv(dist))
    else:
        write_text(path, dumps({"labels": dist.labels, "probability": dist.probs, **report}))
    write_text(_output_path(cfg, ".moments").with_suffix(".json"), dumps(report))
    return report


def _cycle_inputs(cfg: RunConfig) -> tuple[int, coins.CoinOperator, walk.InitialCoinState]:
    if cfg.n is None:
        raise ConfigError("n", "cycle size required")
    if cfg.n < 2:
        raise ConfigError("n", "cycle size must be >= 2")
    coin = _two_dim_coin(cfg)
    g = graphs.make_cycle(cfg.n)
    st = build_initial(dataclasses.replace(cfg, graph="cycle"), g)
    return cfg.n, coin, walk.InitialCoinState.from_vector(st.amplitudes[:, 0])


def cmd_spectrum(cfg: RunConfig) -> dict:
    n, coin, _ = _cycle_inputs(cfg)
    sd = spectral.cycle_eigensystem(n, coin)
    out = sd.to_dict()
    out["degeneracies"] = spectral.degeneracy_condition(n, coin).to_dict()
    write_text(_output_path(dataclasses.replace(cfg, format="json")), dumps(out))
    return {"N": n, "degenerate_pairs": len(out["degeneracies"]["pairs"])}


def cmd_limit(cfg: RunConfig) -> dict:
    n, coin, init = _cycle_inputs(cfg)
    g = graphs.make_cycle(n)
    lim = spectral.limiting_distribution(n, coin, init, g)
    avg = spectral.time_averaged_distribution(walk.make_initial_state(g, 0, init), coin, g, cfg.T)
    summary = {
        "N": n,
        "T": cfg.T,
        "uniform": spectral.degeneracy_condition(n, coin).is_empty,
        "tv_limit_vs_average": analysis.total_variation(lim, avg),
        "tv_limit_vs_uniform": analysis.total_variation(lim, analysis.uniform_distribution(n)),
    }
    path = _output_path(cfg)
    if cfg.format == "csv":
        rows = ["x,probability,time_average"]
        rows += [f"{x},{fmt(p)},{fmt(a)}" for x, p, a in zip(range(n), lim.probs, avg.probs)]
        write_text(path, "\n".join(rows) + "\n")
    else:
        write_text(path, dumps({**summary, "limit": lim.probs, "time_average": avg.probs}))
    return summary


def cmd_periods(cfg: RunConfig) -> dict:
    g = build_graph(cfg)
    coin = build_coin(cfg, g)
    omega_max = cfg.omega_max or 10_000
    period = spectral.find_period_numeric(build_initial(cfg, g), coin, g, omega_max)
    out = {"graph": g.kind, "params": g.to_json()["params"], "omega_max": omega_max, "period": period}
    write_text(_output_path(dataclasses.replace(cfg, format="json")), dumps(out))
    return out


def cmd_period_scan(cfg: RunConfig) -> dict:
    omega_max = cfg.omega_max or 120
    certs = []
    for n in range(2, cfg.n_max + 1):
        certs.extend(spectral.solve_period_condition(n, omega_max))
    table = []
    for n, (om, rho, delta) in spectral.KNOWN_PERIODS.items():
        if n > cfg.n_max:
            continue
        g = graphs.make_cycle(n)
        c = coins.make_general_coin2(rho, delta, delta)
        found = spectral.find_period_numeric(walk.make_initial_state(g), c, g, max(om, omega_max))
        table.append({"N": n, "rho": rho, "delta_over_pi": delta / math.pi, "period": found, "expected": om})
    minimal = {}
    for c in certs:
        minimal[c.N] = min(minimal.get(c.N, c.Omega), c.Omega)
    path = _output_path(cfg)
    if cfg.format == "csv":
        rows = ["N,Omega,rho,delta_over_pi,m,rho_free"]
        rows += [
            f"{c.N},{c.Omega},{fmt(c.rho)},{fmt(c.delta / math.pi)},{c.m},{int(c.rho_free)}" for c in certs
        ]
        write_text(path, "\n".join(rows) + "\n")
    else:
        write_text(path, dumps({"certificates": [c.to_dict() for c in certs], "table": table}))
    write_text(_output_path(cfg, ".table").with_suffix(".json"), dumps(table))
    return {"certificates": len(certs), "smallest_period": minimal, "table": table}


def cmd_classify(cfg: RunConfig) -> dict:
    all_coins = coin_classes.enumerate_unbiased_coins4()
    classes = coin_classes.classify_coins(all_coins, cfg.t_probe)
    h = coins.make_hadamard_coin()
    named = {
        "hadamard_x_hadamard": coins.tensor_coin(h, h),
        "grover4": coins.make_grover_coin(4),
        "dft4": coins.make_dft_coin(4),
    }
    located = {k: coin_classes.class_index(c, classes) for k, c in named.items()}
    path = _output_path(cfg)
    if cfg.format == "csv":
        rows = ["class_id,members,final_second_moment,named"]
        for cl in classes:
            tags = ";".join(k for k, v in located.items() if v == cl.class_id)
            rows.append(f"{cl.class_id},{cl.members},{fmt(cl.signature[-1])},{tags}")
        write_text(path, "\n".join(rows) + "\n")
    else:
        write_text(path, dumps({"classes": [c.to_dict() for c in classes], "named": located}))
    return {"coins": len(all_coins), "classes": len(classes), "sizes": [c.members for c in classes], "named": located}


def cmd_glued_trees(cfg: RunConfig) -> dict:
    g = graphs.make_glued_trees(cfg.n if cfg.n is not None else 7, cfg.seed)
    coin = build_coin(cfg, g)
    state = build_initial(cfg, g)
    series = []
    for st in walk.trajectory(state, coin, cfg.steps):
        if st.time % cfg.every == 0 or st.time == cfg.steps:
            series.append((st.time, analysis.column_distribution(st).probs))
    classical = analysis.classical_walk_distribution(g, cfg.steps).probs
    exit_probs = [float(p[-1]) for _, p in series]
    path = _output_path(cfg)
    if cfg.format == "csv":
        rows = ["t,column,probability"]
        for t, p in series:
            rows += [f"{t},{c},{fmt(v)}" for c, v in enumerate(p)]
        write_text(path, "\n".join(rows) + "\n")
    else:
        write_text(path, dumps({"series": [{"t": t, "probability": p} for t, p in series], "classical": classical}))
    best = int(np.argmax(exit_probs))
    return {"depth": g.params["N"], "peak_exit_time": series[best][0], "peak_exit_probability": exit_probs[best]}


def cmd_sweep(cfg: RunConfig) -> dict:
    g = graphs.make_open_lattice(1)
    coin = build_coin(cfg, g)
    grid = coin_classes.default_initial_grid(cfg.samples, cfg.seed)
    report = coin_classes.extremal_spreading(coin, grid, cfg.steps)
    out = report.to_dict()
    write_text(_output_path(dataclasses.replace(cfg, format="json")), dumps(out))
    return {k: out[k] for k in ("min_second", "max_second", "exact_min_second", "exact_max_second", "extremes_centred")}


HANDLERS = {
    "walk": cmd_walk,
    "spectrum": cmd_spectrum,
    "limit": cmd_limit,
    "periods": cmd_periods,
    "period-scan": cmd_period_scan,
    "classify": cmd_classify,
    "glued-trees": cmd_glued_trees,
    "sweep": cmd_sweep,
}


def run(cfg: RunConfig) -> dict:
    cfg.validate()
    return HANDLERS[cfg.command](cfg)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", choices=GRAPHS, default=argparse.SUPPRESS)
    p.add_argument("--n", type=int, default=argparse.SUPPRESS, help="cycle size, tree depth or cube dimension")
    p.add_argument("--width", type=int, default=argparse.SUPPRESS)
    p.add_argument("--height", type=int, default=argparse.SUPPRESS)
    p.add_argument("--boundary", choices=[b.value for b in graphs.BoundaryMode], default=argparse.SUPPRESS)
    p.add_argument("--coin", choices=COINS, default=argparse.SUPPRESS)
    p.add_argument("--rho", type=float, default=argparse.SUPPRESS)
    p.add_argument("--theta-over-pi", type=float, default=argparse.SUPPRESS)
    p.add_argument("--phi-over-pi", type=float, default=argparse.SUPPRESS)
    p.add_argument("--delta-over-pi", type=float, default=argparse.SUPPRESS, help="sets theta = phi = delta")
    p.add_argument("--eta", type=float, default=argparse.SUPPRESS)
    p.add_argument("--alpha", type=float, default=argparse.SUPPRESS, help="initial coin phase in radians")
    p.add_argument("--alpha-over-pi", type=float, default=argparse.SUPPRESS)
    p.add_argument("--init", default=argparse.SUPPRESS)
    p.add_argument("--steps", type=int, default=argparse.SUPPRESS)
    p.add_argument("--T", type=int, default=argparse.SUPPRESS)
    p.add_argument("--omega-max", type=int, default=argparse.SUPPRESS)
    p.add_argument("--n-max", type=int, default=argparse.SUPPRESS)
    p.add_argument("--t-probe", type=int, default=argparse.SUPPRESS)
    p.add_argument("--samples", type=int, default=argparse.SUPPRESS)
    p.add_argument("--every", type=int, default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--output", "-o", default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    p.add_argument("--save-config", default=None, help="write the resolved RunConfig as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwalk", description="Discrete-time coined quantum walks")
    parser.add_argument("--config", help="replay a RunConfig JSON file")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        _add_common(sub.add_parser(name))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    save = args.pop("save_config", None)
    config_path = args.pop("config", None)
    try:
        if config_path:
            cfg = RunConfig.from_json(Path(config_path).read_text())
            overrides = {k: v for k, v in args.items() if k != "command"}
            cfg = dataclasses.replace(cfg, **overrides)
        else:
            if not args.get("command"):
                parser.error("a command is required")
            cfg = RunConfig(**args)
        result = run(cfg)
    except ConfigError as exc:
        print(f"qwalk: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"qwalk: error: {exc}", file=sys.stderr)
        return 2
    if save:
        write_text(save, cfg.to_json())
    print(dumps(result), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
