"""Command-line front end.

Every subcommand builds a report (a list of key/value rows), printed as an
aligned table or, with ``--json``, as line-delimited JSON.  Exit codes: 0 on
success, 1 when a verification fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from .bruhat import bruhat_cell
from .canonical import ENTRY, MA_CATALOG, sylvester_reduce
from .errors import InsufficientSamples, NotSymplectic, SpecError, SptriError, TauNotZero
from .families import INF, format_param, parse_param
from .matrix import Mat, is_symmetric, matrix_from_data, parse_matrix
from .parabolic import g
from .spclassify import THEOREM, conjugacy_witness, membership_residual, sp_classify
from .subalgebra import AMBIENTS, LieSub, classify_subalgebra
from .triple import Zero, check_cocycle, detect_coboundary, dual, dumps_spec, load_spec, triple_to_spec
from .verify import load_golden, verify_theorem

_ENTRY_LABEL = re.compile(r"^(\(\d\.[ivx]+\))(?::(alpha|gamma)=(.+))?$")


class InputError(Exception):
    """Bad command-line input; reported with exit code 2."""


def jsonable(x):
    if isinstance(x, Mat):
        return [[jsonable(v) for v in row] for row in x.rows]
    if x is INF:
        return "inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    try:
        return float(x)
    except (TypeError, ValueError):
        return str(x)


def _text(x) -> str:
    if isinstance(x, Mat):
        return str(x.map(lambda v: v if isinstance(v, Fraction) else round(float(v), 12) + 0.0))
    if isinstance(x, float):
        return f"{x:.3g}"
    if isinstance(x, (list, tuple)):
        return "; ".join(_text(v) for v in x) if x else "-"
    if isinstance(x, Fraction) or x is INF:
        return format_param(x)
    if x is None:
        return "-"
    if isinstance(x, dict):
        return json.dumps(x)
    return str(x)


class Report:
    def __init__(self, command, as_json):
        self.command = command
        self.as_json = as_json
        self.rows = []
        self.records = []
        self.start = time.perf_counter()

    def add(self, key, value):
        self.rows.append((key, value))

    def record(self, obj):
        """One JSON line (and one table row) per record, for list-like output."""
        self.records.append(obj)

    def emit(self, out=None):
        out = out or sys.stdout
        elapsed = time.perf_counter() - self.start
        if self.as_json:
            for r in self.records:
                print(json.dumps(jsonable(r)), file=out)
            payload = {"command": self.command, **{k: v for k, v in self.rows}, "elapsed": round(elapsed, 4)}
            print(json.dumps(jsonable(payload)), file=out)
            return
        print(f"$ sptri {self.command}", file=out)
        for r in self.records:
            print("  " + "  ".join(_text(v) for v in r.values()), file=out)
        width = max((len(k) for k, _ in self.rows), default=0)
        for k, v in self.rows:
            print(f"{k.ljust(width)}  {_text(v)}", file=out)
        print(f"{'elapsed'.ljust(width)}  {elapsed:.2f} s", file=out)


# ---- input helpers ----------------------------------------------------------


def _load(path):
    try:
        return load_spec(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _matrix_arg(text, what="matrix"):
    try:
        return parse_matrix(text)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{what}: {exc}") from exc


def _entry_arg(text, args):
    m = _ENTRY_LABEL.match(text.strip())
    if not m or m.group(1) not in ENTRY:
        raise InputError(f"unknown catalog entry {text!r}; run `sptri catalog --ma` for identifiers")
    entry = ENTRY[m.group(1)]
    raw = m.group(3)
    if raw is None and entry.kind is not None:
        raw = getattr(args, entry.kind)
        if raw is None:
            raise InputError(f"{entry.ident} needs --{entry.kind}")
    if entry.kind is None:
        return entry, None
    try:
        param = parse_param(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--{entry.kind}: cannot parse {raw!r}") from exc
    if entry.kind == "alpha" and param is not INF and param < 0:
        raise InputError("--alpha must lie in [0, inf]")
    if entry.kind == "gamma" and param is INF:
        raise InputError("--gamma must be a real number")
    return entry, param


# ---- commands -----------------------------------------------------------------


def cmd_classify(args, rep):
    t = _load(args.spec)
    shift = None
    if t.tau.kind == "coboundary":
        # the group is g(tau0, I) (Sigma x| H) g(tau0, I)^-1; classify the untwisted part
        shift, t = t.tau.tau0, t.with_tau(Zero())
    cls = sp_classify(t, grid=args.grid)
    w = cls.witness.matrix
    if shift is not None:
        w = w @ g(sigma=-shift).matrix
        src = _load(args.spec)
        wi = w.inv()
        residual = max(membership_residual(w @ x.matrix @ wi, cls.target)
                       for x in src.sample_elements(args.grid, limit=7))
    else:
        residual = cls.residual
    rep.add("label", str(cls.label))
    rep.add("family", cls.label.ident)
    rep.add("parameter", cls.label.param)
    rep.add("catalog entry", cls.source_entry)
    rep.add("representative", cls.target.describe())
    rep.add("witness", w)
    rep.add("chain", ("g(-tau0,I) then " if shift is not None else "") + cls.witness.describe())
    if args.witness:
        rep.add("factors", [f"{name}={jsonable(m)}" for name, m in cls.witness.factors])
    rep.add("w0 notes", cls.certificates)
    rep.add("residual", residual)
    ok = residual <= args.tol
    rep.add("verified", ok)
    return 0 if ok else 1


def cmd_witness(args, rep):
    ea, pa = _entry_arg(args.entry_a, args)
    eb, pb = _entry_arg(args.entry_b, args)
    res = conjugacy_witness(ea.triple(pa), eb.triple(pb), grid=args.grid)
    rep.add("source", ea.label(pa))
    rep.add("target", eb.label(pb))
    rep.add("labels", f"{res.label_a} / {res.label_b}")
    rep.add("conjugate", res.conjugate)
    if not res.conjugate:
        rep.add("certificate", list(res.certificate))
        return 0
    rep.add("witness", res.witness)
    rep.add("residual", res.residual)
    ok = res.residual <= args.tol
    rep.add("verified", ok)
    return 0 if ok else 1


def cmd_verify(args, rep):
    if args.grid < 3:
        raise InputError(f"--grid must be at least 3 (got {args.grid})")
    r = verify_theorem(args.grid, args.tol)
    for c in r.claims:
        if args.as_json or not c.passed or args.verbose or c.group != "classify":
            rep.record({"status": "PASS" if c.passed else "FAIL", "group": c.group, "claim": c.name,
                        "residual": c.residual, "detail": c.detail})
    rep.add("claims", len(r.claims))
    rep.add("failed", [c.name for c in r.failures])
    rep.add("families reached", len(r.reached))
    rep.add("dimension counts", r.counts())
    rep.add("worst residual", r.worst_residual)
    rep.add("tolerance", args.tol)
    rep.add("result", "PASS" if r.passed else "FAIL")
    return 0 if r.passed else 1


def cmd_catalog(args, rep):
    if args.ma:
        for e in MA_CATALOG:
            rep.record({"id": e.ident, "sigma": e.sigma_name, "h_family": ("t" if e.transposed else "") + e.tag,
                        "parameter": e.kind or "-", "range": e.param_range or "-"})
        rep.add("entries", len(MA_CATALOG))
        return 0
    golden = load_golden()["labels"]
    for ident, (entry, kind) in THEOREM.items():
        e = ENTRY[entry]
        # (2.5) carries the gamma of (3.v) folded into [-1, 0]
        rng = "[-1, 0]" if ident in ("(2.5)", "(4.4)") else {"alpha": "[0, inf]", "gamma": "R"}.get(kind, "-")
        group = f"({e.sigma_name}, {'t' if e.transposed else ''}{e.tag})"
        rep.record({"id": ident, "dim": golden[ident]["dim"], "representative": e.ident,
                    "group": group, "parameter": kind or "-", "range": rng})
    rep.add("families", len(THEOREM))
    return 0


def cmd_bruhat(args, rep):
    m = _matrix_arg(args.matrix)
    if m.n != 4:
        raise InputError("matrix: expected a 4x4 matrix")
    try:
        w = bruhat_cell(m, args.tol if not m.is_exact else None)
    except NotSymplectic as exc:
        raise InputError(f"matrix: {exc}") from exc
    rep.add("cell", w.tag)
    if args.witness:
        rep.add("weyl representative", w.matrix)
    return 0


def cmd_cocycle(args, rep):
    t = _load(args.spec)
    r = check_cocycle(t, tol=args.tol, grid=args.grid)
    rep.add("triple", t.describe())
    rep.add("pairs", r.pairs)
    rep.add("worst defect", r.worst)
    rep.add("exact zero", r.exact_zero)
    rep.add("cocycle", r.passed)
    if t.tau.kind != "zero":
        try:
            tau0 = detect_coboundary(t.tau, t.h, grid=args.grid)
        except InsufficientSamples as exc:
            tau0 = None
            rep.add("coboundary", f"undecided: {exc}")
        else:
            rep.add("coboundary", tau0 if tau0 is not None else "none")
    return 0 if r.passed else 1


def cmd_dual(args, rep):
    t = _load(args.spec)
    try:
        d = dual(t)
    except TauNotZero as exc:
        raise InputError(f"tau: {exc}") from exc
    rep.add("dual", d.describe())
    if rep.as_json:
        rep.add("spec", triple_to_spec(d))
    else:
        rep.add("spec", "\n" + dumps_spec(d))
    return 0


def cmd_sylvester(args, rep):
    m = _matrix_arg(args.matrix)
    if m.n != 2 or not is_symmetric(m):
        raise InputError("matrix: expected a symmetric 2x2 matrix")
    s = sylvester_reduce(m)
    rep.add("signature", f"({s.p},{s.q},{s.r})")
    rep.add("canonical", s.canonical)
    rep.add("sign", s.sign)
    rep.add("witness", s.witness)
    return 0


def cmd_subalgebra(args, rep):
    text = args.source
    if not text.lstrip().startswith("{"):
        try:
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.source}: {exc.strerror}") from exc
    try:
        data = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict) or set(data) - {"ambient", "generators"}:
        raise InputError("expected an object with keys 'ambient' and 'generators'")
    if data.get("ambient") not in AMBIENTS:
        raise InputError(f"ambient: expected one of {', '.join(AMBIENTS)}")
    gens = []
    for i, x in enumerate(data.get("generators") or []):
        try:
            m = matrix_from_data(x)
        except (ValueError, TypeError) as exc:
            raise InputError(f"generators[{i}]: {exc}") from exc
        if m.n != 2:
            raise InputError(f"generators[{i}]: expected a 2x2 matrix")
        gens.append(m)
    if not gens:
        raise InputError("generators: expected at least one matrix")
    lab = classify_subalgebra(LieSub(data["ambient"], gens))
    rep.add("label", str(lab))
    rep.add("name", lab.name)
    rep.add("parameter", lab.param)
    rep.add("witness", lab.witness)
    return 0


# ---- parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    common.add_argument("--grid", type=int, default=7, help="parameter samples per family (default 7)")
    common.add_argument("--json", dest="as_json", action="store_true", help="line-delimited JSON output")
    common.add_argument("--witness", action="store_true", help="include witness matrices and factors")
    p = argparse.ArgumentParser(prog="sptri", description="Triangular subgroups of Sp(2,R)", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="classify a group spec up to Sp(2,R)-conjugation")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_classify)
    s = sub.add_parser("witness", parents=[common], help="conjugator or non-conjugacy certificate for two entries")
    s.add_argument("entry_a")
    s.add_argument("entry_b")
    s.add_argument("--alpha")
    s.add_argument("--gamma")
    s.set_defaults(fn=cmd_witness)
    s = sub.add_parser("verify-theorem", parents=[common], help="sweep the catalog and check every claim")
    s.add_argument("-v", "--verbose", action="store_true", help="list every classification claim")
    s.set_defaults(fn=cmd_verify)
    s = sub.add_parser("catalog", parents=[common], help="list the classification (or MA catalog with --ma)")
    s.add_argument("--ma", action="store_true")
    s.set_defaults(fn=cmd_catalog)
    s = sub.add_parser("bruhat-cell", parents=[common], help="Weyl element of the Bruhat cell of a 4x4 matrix")
    s.add_argument("matrix")
    s.set_defaults(fn=cmd_bruhat)
    s = sub.add_parser("check-cocycle", parents=[common], help="cocycle and coboundary checks for a spec")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_cocycle)
    s = sub.add_parser("dual", parents=[common], help="print the dual (Sigma^perp, transposed H) spec")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_dual)
    s = sub.add_parser("sylvester", parents=[common], help="Sylvester signature and witness")
    s.add_argument("matrix")
    s.set_defaults(fn=cmd_sylvester)
    s = sub.add_parser("classify-subalgebra", parents=[common], help="normal form of a Lie subalgebra")
    s.add_argument("source", help="JSON text or a path to a JSON file")
    s.set_defaults(fn=cmd_subalgebra)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    rep = Report(" ".join(argv if argv is not None else sys.argv[1:]), args.as_json)
    try:
        code = args.fn(args, rep)
    except (InputError, SpecError) as exc:
        print(f"sptri: error: {exc}", file=sys.stderr)
        return 2
    except SptriError as exc:
        print(f"sptri: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    rep.emit()
    return code


def main():
    sys.exit(run())
