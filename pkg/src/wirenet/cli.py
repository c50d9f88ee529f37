"""Command-line front end: ``wirenet <command> [options]``.

Every command writes deterministic JSON (floats at fixed precision, sorted
keys) carrying a hash of the run configuration; scans and sweeps also write
CSV.  Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 verification mismatch or classification disagreement.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import hashlib
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import bloch, closure, repn, symbolic
from .geometry import DParams, GParams, load_lattice

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_MISMATCH = 4

FLOAT_DIGITS = 12

COMMANDS = ("lattice show", "bloch scan", "bloch bands", "butterfly", "classify", "verify")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    lattice: str = "D"
    spec: str | None = None
    grid: int = 32
    tol: float = 1e-6
    flux: list[str] = field(default_factory=list)
    max_den: int = 13
    axis: str = "12"
    twists: int | None = None
    points: list[str] = field(default_factory=list)
    out: str | None = None
    seed: int = 42
    timestamp: bool = True
    refine: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ConfigError("tolerance must be positive")
        if self.grid < 1:
            raise ConfigError("grid must be positive")
        if self.axis not in ("12", "13", "23"):
            raise ConfigError("axis must be 12, 13 or 23")
        if self.twists is not None and self.twists < 1:
            raise ConfigError("twists must be positive")
        for f in self.flux:
            parse_flux(f)
        for p in self.points:
            parse_point(p)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        return cls(**data)

    def digest(self) -> str:
        """Hash of everything that influences results (output location excluded)."""
        d = self.to_json()
        d.pop("out")
        d.pop("timestamp")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# parsing

_FRAC = re.compile(r"^-?\d+(/\d+)?$")


def parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if not _FRAC.match(s):
        raise ConfigError(f"expected an exact rational like 1/8, got {s!r}")
    return Fraction(s)


def parse_flux(s: str) -> tuple[int, int]:
    f = s.strip()
    if "/" not in f:
        raise ConfigError(f"flux must be p/N, got {s!r}")
    p, N = (int(x) for x in f.split("/"))
    if N < 1:
        raise ConfigError("flux denominator must be positive")
    return p, N


def _triple(s: str) -> tuple[Fraction, Fraction, Fraction]:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ConfigError(f"expected a parenthesised triple, got {s!r}")
    parts = s[1:-1].split(",")
    if len(parts) != 3:
        raise ConfigError(f"expected three entries, got {s!r}")
    return tuple(parse_fraction(p) for p in parts)


def parse_point(s: str) -> dict[str, tuple[Fraction, Fraction, Fraction]]:
    """``"chi=(1/4,1/4,1/4),q=(1/2,1/2,1/2)"`` -> ``{"chi": ..., "q": ...}`` in turns."""
    out = {}
    for m in re.finditer(r"(\w+)\s*=\s*(\([^)]*\))", s):
        key = m.group(1).lower()
        if key not in ("chi", "q", "phi", "alpha"):
            raise ConfigError(f"unknown point key {key!r}")
        out[key] = _triple(m.group(2))
    if not out:
        raise ConfigError(f"could not parse point {s!r}")
    return out


def params_for_point(lattice: str, point: dict):
    """Exact parameters for one ``--point``; stated ``q``/``alpha`` must match the derived ones."""
    if lattice == "D":
        if "chi" not in point:
            raise ConfigError("D points need chi=(...)")
        p = DParams.from_turns(*point["chi"])
        if "q" in point and any((a - b) % 1 for a, b in zip(point["q"], p.q_turns)):
            raise ConfigError(f"q={point['q']} inconsistent with chi (expected {tuple(map(str, p.q_turns))})")
        return p
    if lattice == "G":
        if "phi" not in point:
            raise ConfigError("G points need phi=(...)")
        p = GParams.from_turns(*point["phi"])
        if "alpha" in point and any((a - b) % 1 for a, b in zip(point["alpha"], p.alpha_turns)):
            raise ConfigError("alpha inconsistent with phi")
        return p
    raise ConfigError("classification is defined for D and G")


# ---------------------------------------------------------------------------
# output


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if not np.isfinite(x):
            return str(x)
        return float(f"{x:.{FLOAT_DIGITS}g}") + 0.0
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, Fraction):
        return str(x)
    return x


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=1, sort_keys=True) + "\n"


class Output:
    def __init__(self, cfg: RunConfig, stdout=None):
        self.cfg = cfg
        self.dir = Path(cfg.out) if cfg.out else None
        self.stdout = stdout or sys.stdout
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)

    def _header(self) -> dict:
        h = {"config": self.cfg.to_json(), "config_hash": self.cfg.digest()}
        h["config"].pop("out")
        if self.cfg.timestamp:
            h["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return h

    def json(self, name: str, payload: dict) -> str:
        text = dumps({**self._header(), "result": payload})
        if self.dir:
            (self.dir / name).write_text(text)
        else:
            self.stdout.write(text)
        return text

    def csv(self, name: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
        if not self.dir:
            return
        buf = io.StringIO()
        buf.write(f"# config_hash={self.cfg.digest()}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([f"{x:.{FLOAT_DIGITS}g}" if isinstance(x, (float, np.floating)) else x for x in r])
        (self.dir / name).write_text(buf.getvalue())


# ---------------------------------------------------------------------------
# commands


def _lattice(cfg: RunConfig):
    try:
        return load_lattice(cfg.spec or cfg.lattice)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot load lattice: {exc}") from exc


def cmd_lattice_show(cfg: RunConfig, out: Output) -> int:
    spec = _lattice(cfg)
    data = spec.to_json()
    data["positions"] = [v.to_json() for v in spec.vertex_positions()]
    data["cycles"] = [[str(x) for x in spec.lattice_coordinates(v)] for v in spec.cycle_vectors()]
    out.json("lattice.json", data)
    return EXIT_OK


def cmd_bloch_scan(cfg: RunConfig, out: Output) -> int:
    spec = _lattice(cfg)
    rep = bloch.degeneracy_scan(spec, cfg.grid, cfg.tol, refine=cfg.refine)
    data = rep.to_json()
    if spec.name.upper() == "D":
        h = 2 * np.pi / cfg.grid
        dist = [bloch.d_locus_distance(p.phi) / h for p in rep.points]
        data["max_locus_distance_spacings"] = max(dist) if dist else 0.0
    out.json("scan.json", data)
    k = spec.vertex_count
    out.csv(
        "scan.csv",
        ["phi1", "phi2", "phi3"] + [f"e{i + 1}" for i in range(k)] + ["min_gap"],
        [list(p.phi) + list(p.eigenvalues) + [p.min_gap] for p in rep.points],
    )
    return EXIT_OK


HIGH_SYMMETRY = np.array(
    [[0, 0, 0], [np.pi, 0, 0], [np.pi, np.pi, 0], [np.pi, np.pi, np.pi], [0, 0, 0]], dtype=float
)


def character_path(n: int, corners: np.ndarray = HIGH_SYMMETRY) -> np.ndarray:
    segs = [a + (b - a) * t for a, b in zip(corners[:-1], corners[1:]) for t in np.arange(n)[:, None] / n]
    return np.vstack(segs + [corners[-1:]])


def cmd_bloch_bands(cfg: RunConfig, out: Output) -> int:
    spec = _lattice(cfg)
    path = character_path(cfg.grid)
    ev = bloch.bands_along(spec, path)
    out.json("bands.json", {"lattice": spec.name, "path": path, "eigenvalues": ev})
    out.csv(
        "bands.csv",
        ["phi1", "phi2", "phi3"] + [f"e{i + 1}" for i in range(ev.shape[1])],
        [list(p) + list(e) for p, e in zip(path, ev)],
    )
    return EXIT_OK


def cmd_butterfly(cfg: RunConfig, out: Output) -> int:
    spec = _lattice(cfg)
    if spec.name.upper() != "P":
        raise ConfigError("butterfly sweeps are defined for the P lattice")
    M = cfg.twists or 8
    if cfg.flux:
        pairs = [parse_flux(f) for f in cfg.flux]
        res = {"fluxes": []}
        for p, N in pairs:
            r = repn.butterfly("P", cfg.axis, [N], twist_grid_m=M)
            res["fluxes"] += [f for f in r["fluxes"] if f["p"] == p % N]
    else:
        res = repn.butterfly("P", cfg.axis, range(1, cfg.max_den + 1), twist_grid_m=M)
    rows, fl = [], []
    for f in res["fluxes"]:
        fl.append({"flux": f"{f['p']}/{f['N']}", "bands": f["bands"], "gaps": f["gaps"]})
        rows += [[f"{f['p']}/{f['N']}", lo, hi] for lo, hi in f["bands"]]
    out.json("butterfly.json", {"lattice": "P", "axis": cfg.axis, "twist_grid": M, "fluxes": fl})
    out.csv("butterfly.csv", ["flux", "band_lo", "band_hi"], rows)
    return EXIT_OK


def cmd_classify(cfg: RunConfig, out: Output) -> int:
    name = cfg.lattice.upper()
    if cfg.points:
        jobs = [(name, params_for_point(name, parse_point(p))) for p in cfg.points]
    else:
        jobs = [(lat, closure.params_from_turns(lat, t)) for lat, t in closure.default_suite()]
    verdicts = [closure.classify_point(lat, p, seed=cfg.seed, order=cfg.twists).to_json() for lat, p in jobs]
    out.json("classify.json", {"verdicts": verdicts})
    out.csv(
        "classify.csv",
        ["lattice", "params", "predicted_case", "predicted", "observed", "closure_dim", "reference_full_dim", "agree"],
        [
            [v["lattice"], " ".join(v["params"]), v["predicted_case"], v["predicted"], v["observed"],
             v["closure_dim"], v["reference_full_dim"], v["agree"]]
            for v in verdicts
        ],
    )
    return EXIT_OK if all(v["agree"] for v in verdicts) else EXIT_MISMATCH


def cmd_verify(cfg: RunConfig, out: Output) -> int:
    reports = [symbolic.verify_X3(), symbolic.verify_X6(), symbolic.verify_phase_relations(seed=cfg.seed)]
    out.json("verify.json", {"reports": reports})
    return EXIT_OK if all(r["status"] == "pass" for r in reports) else EXIT_MISMATCH


HANDLERS = {
    "lattice show": cmd_lattice_show,
    "bloch scan": cmd_bloch_scan,
    "bloch bands": cmd_bloch_bands,
    "butterfly": cmd_butterfly,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def run(cfg: RunConfig, stdout=None) -> int:
    try:
        cfg.validate()
        return HANDLERS[cfg.command](cfg, Output(cfg, stdout))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, np.linalg.LinAlgError, closure.ClosureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    p.add_argument("--lattice", help="P, D or G")
    p.add_argument("--spec", help="path to a lattice JSON spec")
    p.add_argument("--grid", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--flux", help="comma-separated p/N list")
    p.add_argument("--max-den", type=int, dest="max_den")
    p.add_argument("--axis", choices=("12", "13", "23"))
    p.add_argument("--twists", type=int, help="twist grid order")
    p.add_argument("--point", action="append", dest="points", help='e.g. "chi=(1/4,1/4,1/4)"')
    p.add_argument("--out", help="output directory (stdout if omitted)")
    p.add_argument("--seed", type=int)
    p.add_argument("--no-timestamp", action="store_false", dest="timestamp", default=None)
    p.add_argument("--refine", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wirenet", description="Harper operators on the P, D and G wire networks")
    sub = ap.add_subparsers(dest="group", required=True)
    lat = sub.add_parser("lattice").add_subparsers(dest="action", required=True)
    _add_common(lat.add_parser("show", help="dump the quotient graph"))
    bl = sub.add_parser("bloch").add_subparsers(dest="action", required=True)
    _add_common(bl.add_parser("scan", help="degeneracy scan on a character grid"))
    _add_common(bl.add_parser("bands", help="spectra along a character path"))
    for name, h in (("butterfly", "rational-flux sweep"), ("classify", "closure classification"), ("verify", "symbolic identities")):
        _add_common(sub.add_parser(name, help=h))
    return ap


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    command = f"{ns.group} {ns.action}" if getattr(ns, "action", None) else ns.group
    data: dict = {}
    if ns.config:
        try:
            data = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        if "command" in data and data["command"] != command:
            raise ConfigError("config file is for a different command")
    data["command"] = command
    if command == "butterfly":
        data.setdefault("lattice", "P")
    for key in ("lattice", "spec", "grid", "tol", "max_den", "axis", "twists", "points", "out", "seed", "timestamp", "refine"):
        v = getattr(ns, key)
        if v is not None:
            data[key] = v
    if ns.flux is not None:
        data["flux"] = [f for f in ns.flux.split(",") if f.strip()]
    return RunConfig.from_json(data)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TypeError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
