"""Command-line front end: verification campaigns and JSON/CSV reports.

Configuration comes from defaults, then an optional ``key=value`` file
(``#`` starts a comment), then command-line flags.  Exit codes: 0 when
every check passes, 1 when any check fails (the report is still written),
2 on configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

import mpmath

from . import __version__
from .algebra import bracket, identity
from .coproducts import (
    GENERATORS,
    antipode_squared,
    coproduct,
    verify_coproduct_homomorphism,
)
from .dressing import (
    CrossingInputs,
    check_crossing,
    check_crossing2,
    consistency_product,
    dressed_r,
    dressed_unitarity_defect,
    f_cross,
    g_cross,
    phi0_gamma,
    phi_unitary,
    rh_unitarized,
    x_coefficients,
)
from .poles import CHANNELS, classify_poles, pole_oracle
from .representations import (
    ANTIPODE,
    CONJUGATE,
    DIRECT,
    INVERSE_ANTIPODE,
    RepParams,
    antiparticle,
    build_rep,
    check_conjugation,
    verify_drinfeld,
)
from .rmatrix import (
    BAR1_DIRECT,
    CONJ_CONJ,
    DIRECT_DIRECT,
    check_braiding_unitarity,
    check_ybe,
    closed_form_r,
    pair_reps,
    solve_r,
    spectral,
    spectral_coefficients,
    spectral_r,
)
from .sampling import SamplingSpec, pairs, real_crossing_point, triples

COMMANDS = ("verify-rep", "derive-r", "check-ybe", "check-unitarity", "check-crossing",
            "spectral", "dressing", "poles", "full-suite")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "full-suite"
    seed: int = 0
    samples: int = 5
    level_cap: int = 4
    precision: int = 50
    bound: int = 1000
    output: str = "report.json"
    atlas: str | None = None
    c1: Fraction | None = None
    c2: Fraction | None = None
    channel: str | None = None
    oracle: bool = False

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.samples < 0:
            raise ConfigError("samples must be non-negative")
        if self.level_cap < 1:
            raise ConfigError("level_cap must be at least 1")
        if self.precision < 15:
            raise ConfigError("precision must be at least 15 digits")
        if self.bound < 2:
            raise ConfigError("bound must be at least 2")
        if self.channel is not None and self.channel not in CHANNELS:
            raise ConfigError(f"channel must be one of {CHANNELS}")
        return self

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = _fraction_str(v) if isinstance(v, Fraction) else v
        return out


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as exc:
        raise ConfigError(f"not an integer: {text!r}") from exc


PARSERS: dict[str, Callable[[str], object]] = {
    "command": str.strip, "seed": _parse_int, "samples": _parse_int,
    "level_cap": _parse_int, "precision": _parse_int, "bound": _parse_int,
    "output": str.strip, "atlas": str.strip, "c1": _parse_fraction, "c2": _parse_fraction,
    "channel": str.strip, "oracle": _parse_bool,
}


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = PARSERS[key](value)
    return values


def load_config(path, overrides: dict | None = None) -> RunConfig:
    """Defaults, then the file at ``path`` (if any), then ``overrides``."""
    values = {}
    if path is not None:
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"config file not found: {p}")
        values.update(parse_config_text(p.read_text()))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return replace(RunConfig(), **values).validate()


# ----------------------------------------------------------------------
# check results
# ----------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def _witness(*params: RepParams) -> dict:
    return {f"rep{k + 1}": p.to_json() for k, p in enumerate(params)}


def _guard(name: str, witness: dict, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except (ArithmeticError, ValueError) as exc:
        return CheckResult(name, False, witness, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, ok, {} if ok else witness, detail)


def _spec(cfg: RunConfig, salt: int = 0) -> SamplingSpec:
    return SamplingSpec(seed=cfg.seed + salt, count=cfg.samples, bound=cfg.bound)


def _pairs(cfg: RunConfig, kind: str = DIRECT, salt: int = 0):
    return pairs(_spec(cfg, salt), kind, cfg.c1, cfg.c2)


# ----------------------------------------------------------------------
# campaigns
# ----------------------------------------------------------------------

def run_verify_rep(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for kind, salt in ((DIRECT, 0), (CONJUGATE, 1)):
        for p1, p2 in _pairs(cfg, kind, salt):
            w = _witness(p1, p2)

            def drinfeld(p1=p1):
                bad = verify_drinfeld(build_rep(p1, cfg.level_cap), cfg.level_cap)
                return not bad, f"{len(bad)} violations"

            def hom(p1=p1, p2=p2):
                bad = verify_coproduct_homomorphism(pair_reps(p1, p2, 1), 1)
                return not bad, f"{len(bad)} violations"

            out.append(_guard(f"drinfeld[{kind}]", w, drinfeld))
            out.append(_guard(f"coproduct-homomorphism[{kind}]", w, hom))
            if kind == DIRECT:
                def conj(p1=p1):
                    rep = build_rep(p1, 1)
                    fails = []
                    for variant in (ANTIPODE, INVERSE_ANTIPODE):
                        data = antiparticle(p1, variant)
                        for level in (0, 1):
                            rpt = check_conjugation(rep, data, level)
                            fails += [f"{variant}/L{level}/{g}" for g in rpt.failures]
                    return not fails, "; ".join(fails)

                def s2(p1=p1):
                    rep = build_rep(p1, 1)
                    bad = [g for g in GENERATORS if g[2] == 1 and antipode_squared(g, rep)
                           != rep.gen(g) - rep.gen((g[0], g[1], 0))]
                    return not bad, f"{len(bad)} generators"

                out.append(_guard("conjugation", _witness(p1), conj))
                out.append(_guard("antipode-squared-shift", _witness(p1), s2))
    return out


def run_derive_r(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for kind, salt in ((DIRECT_DIRECT, 0), (CONJ_CONJ, 1), (BAR1_DIRECT, 2)):
        rk = CONJUGATE if kind == CONJ_CONJ else DIRECT
        for p1, p2 in _pairs(cfg, rk, salt):
            def derive(p1=p1, p2=p2, kind=kind):
                if kind == BAR1_DIRECT:
                    p1 = antiparticle(p1, ANTIPODE).barred
                solved = solve_r(pair_reps(p1, p2, 1), kind)
                closed = closed_form_r(p1, p2, kind)
                return solved.matrix == closed.matrix, "solver vs closed form"
            out.append(_guard(f"derive-r[{kind}]", _witness(p1, p2), derive))
    return out


def run_ybe(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for kind, rk in ((DIRECT_DIRECT, DIRECT), (CONJ_CONJ, CONJUGATE)):
        for p1, p2, p3 in triples(_spec(cfg, 3), rk):
            def ybe(p1=p1, p2=p2, p3=p3, kind=kind):
                rep = check_ybe(closed_form_r(p1, p2, kind), closed_form_r(p1, p3, kind),
                                closed_form_r(p2, p3, kind))
                return rep.passed, f"{len(rep.violations)}/{rep.checked} components fail"
            out.append(_guard(f"ybe[{kind}]", _witness(p1, p2, p3), ybe))
    return out


def run_unitarity(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for kind, rk, salt in ((DIRECT_DIRECT, DIRECT, 0), (CONJ_CONJ, CONJUGATE, 1)):
        for p1, p2 in _pairs(cfg, rk, salt):
            def unit(p1=p1, p2=p2, kind=kind):
                rep = check_braiding_unitarity(closed_form_r(p1, p2, kind),
                                               closed_form_r(p2, p1, kind))
                return rep.passed, f"{len(rep.violations)} components fail"
            out.append(_guard(f"unitarity[{kind}]", _witness(p1, p2), unit))
    return out


def run_crossing(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for p1, p2 in _pairs(cfg, DIRECT, 4):
        w = _witness(p1, p2)
        ci = CrossingInputs(p1.c, p2.c, p1.u, p2.u)
        out.append(_guard("matrix-crossing[f]", w,
                          lambda p1=p1, p2=p2: (check_crossing(p1, p2).passed, "")))
        out.append(_guard("matrix-crossing[g]", w,
                          lambda p1=p1, p2=p2: (check_crossing2(p1, p2).passed, "")))

        def scalar(ci=ci):
            f = (phi0_gamma(ci) * phi0_gamma(ci.bar1())).rational_value()
            g = (phi0_gamma(ci) * phi0_gamma(ci.tilde2())).rational_value()
            return f == f_cross(ci) and g == g_cross(ci), f"f={f} g={g}"

        out.append(_guard("scalar-crossing", w, scalar))
        out.append(_guard("crossing-consistency", w,
                          lambda ci=ci: (consistency_product(ci) == 1, "")))
    return out


def run_spectral(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for p1, p2 in _pairs(cfg, DIRECT, 5):
        w = _witness(p1, p2)

        def spec(p1=p1, p2=p2):
            pair = pair_reps(p1, p2, 1)
            data = spectral(pair)
            one = identity(data.casimir.parity)
            P = data.projectors
            ok = all(bracket(data.casimir, coproduct(g, pair)).is_zero()
                     for g in GENERATORS if g[2] == 0)
            ok &= all((P[i] @ P[j]) == P[i] if i == j else (P[i] @ P[j]).is_zero()
                      for i in range(3) for j in range(3))
            ok &= (P[0] + P[1] + P[2]) == one
            ok &= spectral_r(pair, data) == closed_form_r(p1, p2).matrix
            return ok, "casimir/projectors/spectral sum"

        out.append(_guard("spectral", w, spec))
    ci = CrossingInputs.from_x(Fraction(1, 2), 1, 1)
    want = (Fraction(15, 7), 1, Fraction(-9, 7))
    got = x_coefficients(ci.x, ci.ctilde)
    eq25 = spectral_coefficients(ci.du, ci.c1, ci.c2)
    out.append(CheckResult("dressed-coefficients", tuple(got) == want and tuple(eq25) == want,
                           detail=" ".join(str(v) for v in got)))
    return out


def run_dressing(cfg: RunConfig) -> list[CheckResult]:
    rng = random.Random(cfg.seed + 6)
    tol = mpmath.mpf(10) ** (-(cfg.precision * 3 // 5))
    out = []
    with mpmath.workdps(cfg.precision):
        for _ in range(max(cfg.samples, 1) * 4 if cfg.samples else 0):
            ci = CrossingInputs(*real_crossing_point(rng))
            w = {"crossing_inputs": ci.to_json()}

            def unitary(ci=ci):
                dev = abs(phi_unitary(ci, cfg.precision).value
                          * phi_unitary(ci.swapped(), cfg.precision).value - 1)
                return dev <= tol, f"|Phi12 Phi21 - 1| = {mpmath.nstr(dev, 3)}"

            def crossed(ci=ci):
                f = f_cross(ci)
                fv = mpmath.mpf(f.re.numerator) / f.re.denominator
                dev = abs(phi_unitary(ci, cfg.precision).value
                          * phi_unitary(ci.bar1(), cfg.precision).value - fv)
                return dev <= tol * abs(fv), f"deviation {mpmath.nstr(dev, 3)}"

            def cartan(ci=ci):
                a = rh_unitarized(ci, cfg.precision)
                b = phi_unitary(ci, cfg.precision).value
                dev = abs(a / b - 1)
                return dev <= tol, f"relative deviation {mpmath.nstr(dev, 3)}"

            out += [_guard("phi-unitarity", w, unitary), _guard("phi-crossing", w, crossed),
                    _guard("cartan-factor", w, cartan)]
        for p1, p2 in _pairs(cfg, DIRECT, 7):
            def dressed(p1=p1, p2=p2):
                ci = CrossingInputs(p1.c, p2.c, p1.u, p2.u)
                fwd = dressed_r(ci, spectral(pair_reps(p1, p2, 0)), cfg.precision)
                back = dressed_r(ci.swapped(), spectral(pair_reps(p2, p1, 0)), cfg.precision)
                dev = dressed_unitarity_defect(fwd, back)
                return dev <= tol, f"defect {mpmath.nstr(dev, 3)}"
            out.append(_guard("dressed-unitarity", _witness(p1, p2), dressed))
    return out


@dataclass(frozen=True)
class AtlasRow:
    c1: Fraction
    c2: Fraction
    channel: str
    x: Fraction
    order: int
    provenance: str


def _pole_points(cfg: RunConfig) -> list[tuple[Fraction, Fraction]]:
    if cfg.c1 is not None and cfg.c2 is not None:
        return [(cfg.c1, cfg.c2)]
    rng = random.Random(cfg.seed + 8)
    pts = []
    while len(pts) < cfg.samples:
        c1 = Fraction(rng.randint(-60, 60), rng.choice((1, 2, 3, 5, 7, 10)))
        c2 = Fraction(rng.randint(-60, 60), rng.choice((2, 3, 5, 7, 10)))
        both_int = c1.denominator == 1 and c2.denominator == 1
        if c1 + c2 not in (0, -1, -2) and not both_int and not {c1, c2} & {0, -1}:
            pts.append((c1, c2))
    return pts


def run_poles(cfg: RunConfig) -> tuple[list[CheckResult], list[AtlasRow]]:
    out, rows = [], []
    channels = (cfg.channel,) if cfg.channel else CHANNELS
    for c1, c2 in _pole_points(cfg):
        for ch in channels:
            w = {"c1": _fraction_str(c1), "c2": _fraction_str(c2), "channel": ch}
            try:
                rep = classify_poles(c1, c2, ch)
            except (ArithmeticError, ValueError) as exc:
                out.append(CheckResult("poles", False, w, f"{type(exc).__name__}: {exc}"))
                continue
            rows += [AtlasRow(c1, c2, ch, e.x, e.order, e.provenance) for e in rep.entries]
            if cfg.oracle:
                def agree(rep=rep, c1=c1, c2=c2, ch=ch):
                    orc = pole_oracle(c1, c2, ch)
                    return orc == rep, f"oracle {_locs(orc)} vs rules {_locs(rep)}"
                out.append(_guard("poles-oracle", w, agree))
            else:
                out.append(CheckResult("poles", True))
    return out, rows


def _locs(rep) -> str:
    return "{" + ", ".join(f"{_fraction_str(x)}:{o}" for x, o in sorted(rep.locations().items())) + "}"


def write_atlas(rows: Iterable[AtlasRow], path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["c1", "c2", "channel", "x", "order", "provenance"])
        for r in rows:
            wr.writerow([_fraction_str(r.c1), _fraction_str(r.c2), r.channel,
                         _fraction_str(r.x), r.order, r.provenance])


CAMPAIGNS: dict[str, Callable[[RunConfig], list[CheckResult]]] = {
    "verify-rep": run_verify_rep,
    "derive-r": run_derive_r,
    "check-ybe": run_ybe,
    "check-unitarity": run_unitarity,
    "check-crossing": run_crossing,
    "spectral": run_spectral,
    "dressing": run_dressing,
}


def execute(cfg: RunConfig) -> tuple[dict, list[AtlasRow]]:
    """Run the configured campaign; returns the report document and atlas rows."""
    names = list(CAMPAIGNS) + ["poles"] if cfg.command == "full-suite" else [cfg.command]
    checks: dict[str, list[dict]] = {}
    timings: dict[str, float] = {}
    rows: list[AtlasRow] = []
    for name in names:
        t0 = time.perf_counter()
        if name == "poles":
            pole_cfg = cfg if cfg.command == "poles" else replace(cfg, oracle=True)
            results, rows = run_poles(pole_cfg)
        else:
            results = CAMPAIGNS[name](cfg)
        timings[name] = round(time.perf_counter() - t0, 4)
        checks[name] = [r.to_json() for r in results]
    failures = [dict(c, campaign=k) for k, v in checks.items() for c in v if not c["passed"]]
    report = {
        "command": cfg.command,
        "config": cfg.to_json(),
        "library_version": __version__,
        "seed": cfg.seed,
        "sampling": _spec(cfg).to_json(),
        "passed": not failures,
        "summary": {k: {"checks": len(v), "failed": sum(not c["passed"] for c in v)}
                    for k, v in checks.items()},
        "failures": failures,
        "checks": checks,
        "timings": timings,
    }
    return report, rows


# ----------------------------------------------------------------------
# argument handling
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sl21-yangian",
                                 description="Exact checks for sl(2|1) Yangian R-matrices.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="key=value configuration file")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--samples", type=int)
    ap.add_argument("--level-cap", dest="level_cap", type=int)
    ap.add_argument("--precision", type=int, help="decimal digits for Gamma evaluations")
    ap.add_argument("--bound", type=int, help="numerator/denominator bound for sampling")
    ap.add_argument("--output", "-o", help="JSON report path")
    ap.add_argument("--atlas", help="CSV pole atlas path (poles and full-suite)")
    ap.add_argument("--c1", type=Fraction)
    ap.add_argument("--c2", type=Fraction)
    ap.add_argument("--channel", choices=CHANNELS)
    ap.add_argument("--oracle", action="store_true", default=None,
                    help="compare the rule tables with the order-counting oracle")
    ap.add_argument("--quiet", "-q", action="store_true")
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    overrides = {k: v for k, v in vars(ns).items() if k not in ("config", "quiet")}
    try:
        cfg = load_config(ns.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    report, rows = execute(cfg)
    Path(cfg.output).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if cfg.command in ("poles", "full-suite"):
        write_atlas(rows, cfg.atlas or str(Path(cfg.output).with_suffix(".csv")))
    if not ns.quiet:
        for name, s in report["summary"].items():
            status = "ok" if not s["failed"] else "FAIL"
            print(f"{name:<16} {s['checks'] - s['failed']}/{s['checks']} {status}")
        for f in report["failures"][:10]:
            print(f"  failed {f['campaign']}:{f['name']} {f.get('detail', '')}")
    return 0 if report["passed"] else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
