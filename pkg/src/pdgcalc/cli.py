"""``verify``: run verification suites and write deterministic reports.

Each suite expands into independent tasks (one parameter tuple each).  Task
results are sorted canonically, so the JSON report does not depend on the
worker count; wall times are left out unless ``--timing`` is given.
"""

from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import click

from ._linalg import is_prime

SCHEMA_VERSION = 1
SUITES = ("symcalc", "nilhecke", "grasmod", "fcfilt-ee", "cohomology", "matrix",
          "umodel-formulas", "stosic", "k0")
ALIASES = {"symcalc-oracle": "symcalc"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    suites: list = field(default_factory=lambda: ["symcalc"])
    primes: list = field(default_factory=lambda: [3])
    a: int | None = None
    b: int | None = None
    n: int | None = None
    N: int | None = None
    max_size: int | None = None
    cutoff: int | None = None
    jobs: int = 1
    out: str | None = None
    format: str = "md"
    timing: bool = False
    seedless: bool = False

    def validate(self):
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}")
        if not self.primes:
            raise ConfigError("no primes given")
        for p in self.primes:
            if not is_prime(p):
                raise ConfigError(f"{p} is not prime")
        if self.cutoff is not None:
            if self.cutoff % 2 or any(self.cutoff < 2 * p for p in self.primes):
                raise ConfigError("cutoff must be even and at least 2p")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        if self.format not in ("json", "md"):
            raise ConfigError("format must be json or md")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("format")
        d.pop("jobs")
        return d


@dataclass
class SuiteResult:
    suite: str
    params: dict
    status: str  # pass, fail, undetermined, error
    counterexample: object = None
    detail: dict = field(default_factory=dict)
    wall_time: float | None = None

    def sort_key(self):
        return (self.suite, json.dumps(self.params, sort_keys=True))


# ------------------------------------------------------------------ tasks

def _pin(value, default):
    return [value] if value is not None else list(default)


def expand(cfg: RunConfig) -> list:
    """All (suite, params) tasks of a run."""
    tasks = []
    for suite in cfg.suites:
        for p in cfg.primes:
            tasks.extend((suite, prm) for prm in _suite_params(suite, p, cfg))
    return tasks


def _suite_params(suite: str, p: int, cfg: RunConfig) -> list:
    if suite == "symcalc":
        return [{"p": p, "n": n, "max_size": cfg.max_size or 6} for n in _pin(cfg.n, range(1, 6))]
    if suite == "nilhecke":
        return [{"p": p, "n": n} for n in _pin(cfg.n, range(1, (cfg.max_size or 5) + 1))]
    if suite == "grasmod":
        top = cfg.max_size or 3
        return [{"p": p, "a": a, "b": b} for a in _pin(cfg.a, range(1, top + 1))
                for b in _pin(cfg.b, range(1, top + 1))]
    if suite == "fcfilt-ee":
        top = cfg.max_size or 6
        return [{"p": p, "a": a, "b": b} for a in _pin(cfg.a, range(1, top))
                for b in _pin(cfg.b, range(1, top)) if a + b <= top]
    if suite == "cohomology":
        return [{"p": p, "n": n, "a": a, "cutoff": cfg.cutoff}
                for n in _pin(cfg.n, range(1, p + 3)) for a in _pin(cfg.a, range(p))]
    if suite == "matrix":
        return [{"p": p, "n": n} for n in _pin(cfg.n, range(1, p + 1))]
    if suite == "umodel-formulas":
        from . import umodel
        out = []
        for fid in umodel.FORMULA_IDS:
            for prm in umodel.formula_params(fid, a_max=2, n_max=3):
                if cfg.a is not None and prm["a"] != cfg.a:
                    continue
                if cfg.b is not None and prm.get("b", cfg.b) != cfg.b:
                    continue
                if cfg.n is not None and prm["n"] != cfg.n:
                    continue
                q = {"p": p, "formula": fid, **prm}
                if "alpha" in q:
                    q["alpha"] = list(q["alpha"])
                out.append(q)
        return out
    if suite == "stosic":
        out = []
        for a in _pin(cfg.a, (1, 2)):
            for b in _pin(cfg.b, (1, 2)):
                for n in _pin(cfg.n, range(b - a, b - a + 4)):
                    out.append({"p": p, "a": a, "b": b, "n": n})
        return out
    if suite == "k0":
        top = cfg.max_size or 12
        return [{"p": p, "total": t} for t in range(top + 1)]
    raise ConfigError(f"unknown suite {suite!r}")


def run_task(suite: str, params: dict, N: int | None = None) -> SuiteResult:
    t0 = time.perf_counter()
    try:
        status, cex, detail = _RUNNERS[suite](params, N)
    except Exception as exc:  # reported, never raised
        status, cex, detail = "error", None, {"error": f"{type(exc).__name__}: {exc}"}
    res = SuiteResult(suite, params, status, cex, detail)
    res.wall_time = round(time.perf_counter() - t0, 3)
    return res


def _verdict(ok: bool, cex=None, detail=None):
    return ("pass" if ok else "fail", None if ok else cex, detail or {})


def _run_symcalc(prm, _N):
    from .symcalc import (BlockSym, complete, diff_pol, diff_schur, elementary,
                          monomials_to_schur, partitions_of, schur_to_monomials)
    p, n = prm["p"], prm["n"]
    for size in range(prm["max_size"] + 1):
        for lam in partitions_of(size, max_rows=n):
            want = monomials_to_schur(diff_pol(schur_to_monomials(lam, n, p)))
            if diff_schur(lam, n, p) != want:
                return _verdict(False, {"check": "diff_schur", "lambda": list(lam)})
            f = BlockSym.schur((n,), p, 0, lam)
            for _ in range(p):
                f = f.diff()
            if not f.is_zero() and size <= 2 * p:
                return _verdict(False, {"check": "p-nilpotent", "lambda": list(lam)})
    for k in range(9):
        e = elementary(k, n, p)
        lhs = e.diff()
        rhs = elementary(1, n, p) * e - elementary(k + 1, n, p).scale(k + 1)
        if lhs != rhs:
            return _verdict(False, {"check": "d(e_k)", "k": k})
        h = complete(k, n, p)
        if h.diff() != complete(k + 1, n, p).scale(k + 1) - complete(1, n, p) * h:
            return _verdict(False, {"check": "d(h_k)", "k": k})
    return _verdict(True)


def _run_nilhecke(prm, _N):
    from . import nilhecke as nh
    p, n = prm["p"], prm["n"]
    rel = nh.relations_hold(n, p)
    if not all(rel.values()):
        return _verdict(False, {"check": "relations", "failed": sorted(k for k, v in rel.items() if not v)})
    if not nh.verify_dDn(n, p):
        return _verdict(False, {"check": "d(D_n)"})
    if not nh.verify_d_delta(n, p):
        return _verdict(False, {"check": "d(delta_n)"})
    if n <= 4:
        e = nh.epsilon(n, p)
        if (e @ e) != e:
            return _verdict(False, {"check": "epsilon idempotent"})
    return _verdict(True)


def _run_grasmod(prm, _N):
    from . import grasmod as gm
    p, a, b = prm["p"], prm["a"], prm["b"]
    if not gm.verify_orthogonality(a, b, p):
        return _verdict(False, {"check": "orthogonality"})
    for k in range(p):
        for l in range(p):
            if not gm.verify_pairing_dinvariance(a, b, k, l, p):
                return _verdict(False, {"check": "pairing d-invariance", "k": k, "l": l})
    sweep = gm.finite_cell_sweep(a, b, p)
    want = {1: [((-b) % p, 0)], 2: [(0, (-a) % p)]}
    found = {str(side): [list(kl) for kl in pairs] for side, pairs in sweep.items()}
    return _verdict(sweep == want, {"finite_cell_pairs": found}, {"finite_cell_pairs": found})


def _run_ee(prm, _N):
    from . import fcverify as fc
    from .qring import quantum_binomial
    p, a, b = prm["p"], prm["a"], prm["b"]
    rep = fc.verify_fc(fc.ee_decomposition(a, b, p))
    k0_ok = rep.k0_relation() == quantum_binomial(a + b, a)
    detail = {"conditions": {k: v.passed for k, v in rep.conditions.items()},
              "k0": str(rep.k0_relation())}
    return _verdict(rep.passed and k0_ok, rep.first_failure() or "k0", detail)


def _run_cohomology(prm, _N):
    from . import grasmod as gm
    rep = gm.truncated_cohomology_S(prm["n"], prm["a"], prm["p"], prm.get("cutoff"))
    detail = {"kind": rep.kind, "cutoff": rep.cutoff, "resolved_limit": rep.resolved_limit,
              "observed": [list(x) for x in rep.observed]}
    if not rep.match:
        return "fail", {"predicted": [list(x) for x in rep.predicted]}, detail
    return "pass", None, detail


def _run_matrix(prm, _N):
    from . import fcverify as fc
    from .pcx import MatrixPDG, is_contractible
    p, n = prm["p"], prm["n"]
    m = MatrixPDG(n, p)
    if not m.leibniz_holds():
        return _verdict(False, {"check": "leibniz"})
    try:
        c = m.complex()
    except ValueError as exc:
        return "fail", {"finding": str(exc)}, {}
    if is_contractible(c) != (n == p):
        return _verdict(False, {"check": "contractible iff n = p"})
    nat = fc.matrix_dg_filtration(n, p, "natural").passed
    rev = fc.matrix_dg_filtration(n, p, "reversed").passed
    if not nat or (n > 1 and rev):
        return _verdict(False, {"check": "dg filtration order", "natural": nat, "reversed": rev})
    return _verdict(True)


def _run_formula(prm, N):
    from . import umodel
    q = {k: (tuple(v) if k == "alpha" else v) for k, v in prm.items() if k not in ("p", "formula")}
    if N is not None:
        ctx = umodel.FlagContext(N, prm["p"])
        results = [(N, umodel.verify_formula(prm["formula"], q, ctx))]
    else:
        results = umodel.formula_results(prm["formula"], q, prm["p"])
    if not results:
        return "undetermined", None, {"reason": "no context in range"}
    bad = [N for N, ok in results if not ok]
    return _verdict(not bad, {"N": bad}, {"contexts": [N for N, _ in results]})


def _run_stosic(prm, N):
    from . import umodel
    p, a, b, n = prm["p"], prm["a"], prm["b"], prm["n"]
    if n < b - a:
        return "undetermined", None, {"reason": "use-FE-side"}
    ctxs = [umodel.FlagContext(N, p)] if N is not None else umodel.stosic_contexts(a, b, n, p)
    detail = {"k0_line": umodel.stosic_k0_line(a, b, n), "contexts": [c.N for c in ctxs]}
    for ctx in ctxs:
        rep = umodel.verify_stosic_fc(a, b, n, ctx)
        if not rep.passed:
            name, where = rep.first_failure()
            return "fail", {"N": ctx.N, "condition": name, "at": str(where)}, detail
        detail["summands"] = len(rep.shifts)
    return "pass", None, detail


def _run_k0(prm, _N):
    from .qring import box_partition_gf, quantum_binomial
    t = prm["total"]
    for j in range(t + 1):
        if box_partition_gf(j, t - j) != quantum_binomial(t, j):
            return _verdict(False, {"j": j, "m": t - j})
    return _verdict(True)


_RUNNERS = {
    "symcalc": _run_symcalc,
    "nilhecke": _run_nilhecke,
    "grasmod": _run_grasmod,
    "fcfilt-ee": _run_ee,
    "cohomology": _run_cohomology,
    "matrix": _run_matrix,
    "umodel-formulas": _run_formula,
    "stosic": _run_stosic,
    "k0": _run_k0,
}


def _star(args):
    return run_task(*args)


def run(cfg: RunConfig) -> tuple:
    """(exit code, report dict)."""
    cfg.validate()
    tasks = [(s, prm, cfg.N) for s, prm in expand(cfg)]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_star, tasks))
    else:
        results = [_star(t) for t in tasks]
    results.sort(key=SuiteResult.sort_key)
    counts = {s: sum(1 for r in results if r.status == s)
              for s in ("pass", "fail", "undetermined", "error")}
    rows = []
    for r in results:
        d = asdict(r)
        if not cfg.timing:
            d.pop("wall_time")
        rows.append(d)
    report = {
        "schema_version": SCHEMA_VERSION,
        "config_echo": cfg.echo(),
        "results": rows,
        "summary": {"total": len(results), **counts},
    }
    if counts["error"]:
        code = 2
    elif counts["fail"]:
        code = 1
    else:
        code = 0
    return code, report


# ---------------------------------------------------------------- output

def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def to_markdown(report: dict) -> str:
    s = report["summary"]
    lines = ["# Verification report", "",
             f"{s['total']} tasks: {s['pass']} pass, {s['fail']} fail, "
             f"{s['undetermined']} undetermined, {s['error']} error", ""]
    k0 = sorted({r["detail"]["k0_line"] for r in report["results"] if "k0_line" in r.get("detail", {})})
    if k0:
        lines += ["## K0 relations", ""] + [f"- {x}" for x in k0] + [""]
    lines += ["| suite | params | status | note |", "|---|---|---|---|"]
    for r in report["results"]:
        prm = ", ".join(f"{k}={v}" for k, v in sorted(r["params"].items()) if v is not None)
        note = "" if r["counterexample"] is None else json.dumps(r["counterexample"], sort_keys=True)
        lines.append(f"| {r['suite']} | {prm} | {r['status']} | {note} |")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- config

def read_config_file(path: str) -> dict:
    """Flat `key = value` lines; `#` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for num, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{num}: expected key = value")
            key, val = (x.strip() for x in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def _ints(text) -> list:
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected integers, got {text!r}") from None


def build_config(file_values: dict, flags: dict) -> RunConfig:
    merged = dict(file_values)
    merged.update({k: v for k, v in flags.items() if v is not None and v != ()})
    cfg = RunConfig()
    known = {"suite", "p", "a", "b", "n", "N", "max_size", "cutoff", "jobs", "out", "format", "timing"}
    for key in merged:
        if key not in known:
            raise ConfigError(f"unknown setting {key!r}")
    if "suite" in merged:
        val = merged["suite"]
        items = val if isinstance(val, (list, tuple)) else [val]
        names = [x.strip() for item in items for x in str(item).split(",") if x.strip()]
        cfg.suites = [ALIASES.get(x, x) for x in names]
    if "p" in merged:
        val = merged["p"]
        cfg.primes = [q for item in (val if isinstance(val, (list, tuple)) else [val]) for q in _ints(item)]
    for key in ("a", "b", "n", "N", "max_size", "cutoff", "jobs"):
        if key in merged:
            vals = _ints(merged[key])
            if len(vals) != 1:
                raise ConfigError(f"{key} takes one integer")
            setattr(cfg, key, vals[0])
    if "out" in merged:
        cfg.out = str(merged["out"])
    if "format" in merged:
        cfg.format = str(merged["format"])
    if "timing" in merged:
        cfg.timing = str(merged["timing"]).lower() in ("1", "true", "yes", "on")
    cfg.seedless = os.environ.get("PDG_VERIFIER_SEEDLESS") == "1"
    return cfg


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="key = value file; flags win.")
@click.option("--suite", multiple=True, help=f"One of {', '.join(SUITES)} (repeat or comma-separate).")
@click.option("--p", "p", multiple=True, help="Prime(s), comma-separated.")
@click.option("--a", type=int)
@click.option("--b", type=int)
@click.option("--n", type=int)
@click.option("--N", "N", type=int, help="Pin the flag size instead of the two default contexts.")
@click.option("--max-size", "max_size", type=int)
@click.option("--cutoff", type=int)
@click.option("--jobs", type=int)
@click.option("--out", type=click.Path(), help="Directory for report.json and report.md.")
@click.option("--format", "fmt", type=click.Choice(["json", "md"]), help="What to print on stdout.")
@click.option("--timing", is_flag=True, default=None, help="Record wall times (breaks byte identity).")
def _command(config_path, suite, p, a, b, n, N, max_size, cutoff, jobs, out, fmt, timing):
    flags = {"suite": suite, "p": p, "a": a, "b": b, "n": n, "N": N, "max_size": max_size,
             "cutoff": cutoff, "jobs": jobs, "out": out, "format": fmt, "timing": timing}
    try:
        file_values = read_config_file(config_path) if config_path else {}
        cfg = build_config(file_values, flags)
        code, report = run(cfg)
    except (ConfigError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    text_json, text_md = to_json(report), to_markdown(report)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(text_json)
        with open(os.path.join(cfg.out, "report.md"), "w", encoding="utf-8") as fh:
            fh.write(text_md)
    click.echo(text_json if cfg.format == "json" else text_md, nl=False)
    return code


def main(argv=None) -> int:
    try:
        code = _command.main(args=argv, prog_name="verify", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 2
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
