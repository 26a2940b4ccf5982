"""Shell access to the oracles and constructions for finite variadic operations.

    preassoc check FILE        run every oracle on an operation-definition file
    preassoc synth FILE        build the extension of given unary/binary parts
    preassoc qinv FILE         enumerate the quasi-inverses of a finite map
    preassoc demo NAME         reproduce one of the worked counterexamples

Reports are JSON.  Exit codes: 0 pass, 1 property failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import oracle
from .catalog import digits
from .construct import (
    ExtensionError,
    check_associative_extension,
    check_preassociative_extension,
    fold_table,
)
from .core import (
    EPS,
    BinaryMap,
    Carrier,
    CheckReport,
    Codomain,
    PreassocError,
    PreconditionError,
    TabulatedVariadic,
    UnaryMap,
    format_word,
    is_epsilon_standard,
    is_standard,
    table_from_json,
    table_to_json,
)
from .quasi_inverse import enumerate_quasi_inverses, is_quasi_inverse
from . import real_families as rf

DEFAULT_REQUIRED = ("associative", "associative_short", "preassociative", "preassociative_pairwise")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunManifest:
    command: str
    inputs: list
    horizon: int
    seed: int
    tolerance: float
    output_path: str | None = None

    def __post_init__(self):
        if self.horizon < 2:
            raise InputError(f"--horizon must be at least 2, got {self.horizon}")
        if not self.tolerance > 0:
            raise InputError(f"--tol must be positive, got {self.tolerance}")


# -- serialization -------------------------------------------------------------

def _atom(v):
    return "" if v is EPS else (v if isinstance(v, (str, int, float)) else str(v))


def _json_value(v):
    return None if v is EPS else v


def _witness_item(item, carrier):
    if isinstance(item, tuple):
        if carrier is not None and all(isinstance(i, int) for i in item):
            return format_word(item, carrier)
        return ",".join(str(_atom(v)) for v in item)
    return str(_atom(item))


def report_json(report: CheckReport, seed, carrier=None) -> dict:
    return {
        "property": report.property_name,
        "verdict": report.verdict,
        "witness": None if report.witness is None else
        [_witness_item(w, carrier) for w in report.witness],
        "horizon": report.horizon_used,
        "seed": seed,
    }


def _emit(doc, out: str | None):
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _reject_unknown(doc, allowed, path):
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    unknown = set(doc) - set(allowed)
    if unknown:
        raise InputError(f"{path}: unknown field(s): {', '.join(sorted(unknown))}")


def _decode(v):
    return EPS if v is None else v


def load_table(path) -> TabulatedVariadic:
    try:
        return table_from_json(_load_json(path))
    except PreassocError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- check ---------------------------------------------------------------------

def _check_suite(F: TabulatedVariadic):
    """(name, callable or None, reason) in report order."""
    op = F.is_operation()
    na_op = "codomain is not carrier ∪ {ε}"
    suite = [
        ("standard", lambda: is_standard(F), None),
        ("epsilon_standard", (lambda: is_epsilon_standard(F)) if F.codomain.epsilon else None,
         "ε is not in the codomain"),
        ("associative", (lambda: oracle.is_associative(F)) if op else None, na_op),
        ("associative_short", (lambda: oracle.is_associative_short(F)) if op else None, na_op),
        ("preassociative", lambda: oracle.is_preassociative(F), None),
        ("preassociative_pairwise", lambda: oracle.is_preassociative_pairwise(F), None),
        ("strongly_preassociative",
         (lambda: oracle.is_strongly_preassociative(F)) if F.horizon >= 3 else None,
         "horizon below 3"),
        ("symmetric", lambda: oracle.is_symmetric(F), None),
    ]
    for name in ("idempotent", "unarily_idempotent", "unarily_range_idempotent"):
        suite.append((name, (lambda n=name: oracle.ORACLES[n](F)) if op else None, na_op))
    suite.append(("unarily_quasi_range_idempotent",
                  lambda: oracle.is_unarily_quasi_range_idempotent(F), None))
    return suite


def cmd_check(args, manifest: RunManifest) -> int:
    F = load_table(args.file)
    if args.horizon is not None:
        if args.horizon > F.horizon:
            raise InputError(f"--horizon {args.horizon} exceeds the table's horizon {F.horizon}")
        F = F.truncate(args.horizon)
    manifest = RunManifest(manifest.command, manifest.inputs, F.horizon, manifest.seed,
                           manifest.tolerance, manifest.output_path)
    results, entries = {}, []
    for name, run, reason in _check_suite(F):
        if run is None:
            entries.append({"property": name, "verdict": None, "witness": None,
                            "horizon": F.horizon, "seed": manifest.seed,
                            "note": f"not applicable: {reason}"})
            continue
        rep = run()
        results[name] = rep
        entries.append(report_json(rep, manifest.seed, F.carrier))
    if results["preassociative"]:
        rep = oracle.constant_part_check(F)
        results[rep.property_name] = rep
        entries.append(report_json(rep, manifest.seed, F.carrier))

    required = args.require or [n for n in DEFAULT_REQUIRED if n in results]
    for name in required:
        if name not in results:
            raise InputError(f"required property {name!r} is unknown or not applicable")
    passed = all(results[n].verdict for n in required)
    kp = oracle.kernel_partition(F)
    doc = {
        "manifest": asdict(manifest),
        "reports": entries,
        "required": list(required),
        "passed": passed,
        "kernel": {"classes": len(kp), "sizes": [len(c) for c in kp.classes],
                   "values": [_atom(v) for v in kp.values]},
    }
    _emit(doc, args.out)
    return 0 if passed else 1


# -- synth ---------------------------------------------------------------------

_PARTS_FIELDS = ("carrier", "codomain", "epsilon", "nullary", "unary", "binary")


def load_parts(path, mode):
    doc = _load_json(path)
    _reject_unknown(doc, _PARTS_FIELDS, path)
    for key in ("carrier", "unary", "binary"):
        if key not in doc:
            raise InputError(f"{path}: missing field: {key}")
    try:
        X = Carrier(doc["carrier"])
        if mode == "assoc":
            cod = Codomain.operations(X)
            F1_cod = X.symbols
        else:
            cod = Codomain(doc.get("codomain", doc["carrier"]), bool(doc.get("epsilon", False)))
            F1_cod = cod.atoms
        unary = {k: _decode(v) for k, v in doc["unary"].items()}
        F1 = UnaryMap.from_dict(unary, domain=X.symbols, codomain=F1_cod)
        binary = {}
        for key, v in doc["binary"].items():
            parts = key.split(",")
            if len(parts) != 2:
                raise InputError(f"{path}: binary key {key!r} is not a pair")
            binary[tuple(parts)] = _decode(v)
        bin_cod = Codomain(X.symbols) if mode == "assoc" else cod
        F2 = BinaryMap.from_dict(X, bin_cod, binary)
    except PreassocError as exc:
        raise InputError(f"{path}: {exc}") from None
    F0 = EPS
    if mode == "preassoc":
        if "nullary" not in doc:
            raise InputError(f"{path}: preassoc mode needs field 'nullary' (the value at ε)")
        F0 = _decode(doc["nullary"])
    return X, cod, F0, F1, F2


def load_unary(path, allowed=("domain", "codomain", "table")) -> UnaryMap:
    """A finite map file; ``""`` as a key and ``null`` as a value both stand for ε."""
    doc = _load_json(path)
    _reject_unknown(doc, allowed, path)
    if "table" not in doc or not isinstance(doc["table"], dict):
        raise InputError(f"{path}: missing object field 'table'")
    table = {(EPS if k == "" else k): _decode(v) for k, v in doc["table"].items()}
    try:
        domain = [EPS if d == "" else d for d in doc["domain"]] if "domain" in doc else None
        codomain = [_decode(c) for c in doc["codomain"]] if "codomain" in doc else None
        return UnaryMap.from_dict(table, domain=domain, codomain=codomain)
    except PreassocError as exc:
        raise InputError(f"{path}: {exc}") from None


def _unary_json(g: UnaryMap) -> dict:
    return {str(_atom(x)): _json_value(v) for x, v in zip(g.domain, g.table)}


def cmd_synth(args, manifest: RunManifest) -> int:
    mode = args.mode
    X, cod, F0, F1, F2 = load_parts(args.file, mode)
    g = None
    if args.g:
        if mode != "preassoc":
            raise InputError("--g only applies to --mode preassoc")
        g = load_unary(args.g)
    doc = {"manifest": asdict(manifest), "mode": mode}
    seed = manifest.seed
    try:
        if mode == "assoc":
            rep = check_associative_extension(F1, F2)
        else:
            rep = check_preassociative_extension(F1, F2, g)
    except PreassocError as exc:
        raise InputError(str(exc)) from None
    doc["conditions"] = [report_json(c, seed) for c in rep.conditions]
    doc["chosen_g"] = None if rep.chosen_g is None else _unary_json(rep.chosen_g)
    doc["verdict"] = rep.verdict
    if F0 not in cod:
        raise InputError(f"nullary value {F0!r} is outside the codomain")
    code = 0 if rep.verdict else 1
    if rep.verdict:
        G = fold_table(X, cod, manifest.horizon, F0, F1, F2, rep.chosen_g)
        if mode == "preassoc":
            std = is_standard(G)
            if not std:
                doc["conditions"].append(report_json(std, seed, X))
                doc["verdict"] = False
                code = 1
        if code == 0:
            if args.out:
                _emit(table_to_json(G), args.out)
                doc["table_file"] = args.out
            else:
                doc["table"] = table_to_json(G)
    _emit(doc, None)
    return code


# -- qinv ----------------------------------------------------------------------

def cmd_qinv(args, manifest: RunManifest) -> int:
    f = load_unary(args.file)
    Q = enumerate_quasi_inverses(f)
    members = []
    ok = True
    for g in Q:
        sym = is_quasi_inverse(g, f).verdict
        inj = (f.restrict(g.range()).is_injective()
               and g.restrict(f.range()).is_injective())
        ok = ok and sym and inj
        members.append({"table": _unary_json(g), "symmetric": sym,
                        "injective_restrictions": inj})
    doc = {"manifest": asdict(manifest), "base": _unary_json(f), "count": len(Q),
           "members": members, "verdict": ok}
    _emit(doc, args.out)
    return 0 if ok else 1


# -- demos ---------------------------------------------------------------------

def _claim(claim, expected, observed, ok):
    return {"claim": claim, "expected": expected, "observed": observed, "ok": bool(ok)}


def demo_expseq(params, manifest):
    d = rf.expseq_counterexample()
    expected_h3p = 3 ** 1.5 + 2 ** 1.5 + 1
    return [
        _claim("H(x1 x2) = 5", 5.0, d.h2, abs(d.h2 - 5.0) <= 1e-9),
        _claim("H(x1' x2') = 5", 5.0, d.h2_prime, abs(d.h2_prime - 5.0) <= 1e-9),
        _claim("H(x1 x2 x3) = 10", 10.0, d.h3, abs(d.h3 - 10.0) <= 1e-9),
        _claim("H(x1' x2' x3) = 3^1.5 + 2^1.5 + 1", expected_h3p, d.h3_prime,
               abs(d.h3_prime - expected_h3p) <= 1e-9),
        _claim("arity-3 values differ by more than 0.5", "> 0.5", abs(d.h3 - d.h3_prime),
               abs(d.h3 - d.h3_prime) > 0.5),
    ]


def _exact_claims(F, cases):
    out = []
    for word, expected in cases:
        got = rf.evaluate(F, word)
        out.append(_claim(f"{F.name}{tuple(word)} = {expected}", expected, got,
                          abs(got - expected) <= 1e-12))
    return out


def demo_relu(params, manifest):
    H = rf.make_family("relu_sum")
    claims = _exact_claims(H, [((-1, -2), 0.0), ((-1, 1), 0.0), ((-1, -2, 1), 0.0), ((-1, 1, 1), 1.0)])
    rep = rf.check_preassociativity_instance(H, (), (-1, -2), (-1, 1), (1,))
    claims.append(_claim("relu∘sum is not preassociative", False, rep.verdict, not rep.verdict))
    return claims


def demo_abs(params, manifest):
    F = rf.make_family("abs_sum")
    claims = _exact_claims(F, [((1,), 1.0), ((-1,), 1.0), ((1, 1), 2.0), ((1, -1), 0.0)])
    rep = rf.check_preassociativity_instance(F, (1,), (1,), (-1,), ())
    claims.append(_claim("|sum| is not preassociative", False, rep.verdict, not rep.verdict))
    return claims


def demo_pnorm(params, manifest):
    p = float(params.get("p", 2))
    F = rf.make_family("pnorm", p=p)
    assoc = rf.check_associativity_identity(F, manifest.seed, 1000, manifest.tolerance)
    unary = rf.check_unary_idempotence(F, tol=manifest.tolerance)
    return [
        _claim(f"p={p:g}: sampled associativity holds", True, assoc.verdict, assoc.verdict),
        _claim(f"p={p:g}: not unarily idempotent", False, unary.verdict, not unary.verdict),
        _claim("unary witness is x = -1", -1.0,
               None if unary.witness is None else unary.witness[0],
               unary.witness == (-1.0,)),
    ]


def semigroup_census(n: int):
    """(count via extension conditions with F1 = id, count via direct triple check)."""
    X = digits(n)
    F1 = UnaryMap.identity(X.symbols)
    via_ext = via_brute = 0
    for values in itertools.product(X.symbols, repeat=n * n):
        rows = tuple(values[i * n:(i + 1) * n] for i in range(n))
        F2 = BinaryMap(X, Codomain(X.symbols), rows)
        via_ext += check_associative_extension(F1, F2).verdict
        idx = X.index
        via_brute += all(rows[idx(rows[a][b])][c] == rows[a][idx(rows[b][c])]
                         for a, b, c in itertools.product(range(n), repeat=3))
    return via_ext, via_brute


def demo_semigroup_count(params, manifest):
    n = int(params.get("n", 2))
    via_ext, via_brute = semigroup_census(n)
    claims = [_claim(f"extension count equals brute-force count (n={n})", via_brute, via_ext,
                     via_ext == via_brute)]
    if n == 2:
        claims.append(_claim("8 associative binary operations on 2 elements", 8, via_ext, via_ext == 8))
    return claims


DEMOS = {
    "remark-expseq": demo_expseq,
    "remark-relu": demo_relu,
    "remark-abs": demo_abs,
    "pnorm": demo_pnorm,
    "semigroup-count": demo_semigroup_count,
}


def _parse_params(items):
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InputError(f"--param expects key=value, got {item!r}")
        params[key] = value
    return params


def cmd_demo(args, manifest: RunManifest) -> int:
    if args.name not in DEMOS:
        raise InputError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    params = _parse_params(args.param)
    try:
        claims = DEMOS[args.name](params, manifest)
    except (ValueError, PreassocError) as exc:
        raise InputError(str(exc)) from None
    ok = all(c["ok"] for c in claims)
    _emit({"manifest": asdict(manifest), "demo": args.name, "params": params,
           "claims": claims, "passed": ok}, args.out)
    return 0 if ok else 1


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=int, default=None, help="word-length horizon (default 4)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", default=None, help="write the output document here")

    parser = argparse.ArgumentParser(prog="preassoc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the oracle suite on a table file")
    p.add_argument("file")
    p.add_argument("--require", action="append", choices=sorted(oracle.ORACLES) +
                   ["standard", "epsilon_standard", "constant_part_propagation"],
                   help="property that must pass for exit 0 (repeatable)")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("synth", parents=[common], help="synthesize an extension")
    p.add_argument("file")
    p.add_argument("--mode", choices=("assoc", "preassoc"), default="assoc")
    p.add_argument("--g", default=None, help="quasi-inverse file for preassoc mode")
    p.set_defaults(run=cmd_synth)

    p = sub.add_parser("qinv", parents=[common], help="enumerate quasi-inverses")
    p.add_argument("file")
    p.set_defaults(run=cmd_qinv)

    p = sub.add_parser("demo", parents=[common], help="reproduce a worked example")
    p.add_argument("name", help=", ".join(DEMOS))
    p.add_argument("--param", action="append", help="key=value (repeatable)")
    p.set_defaults(run=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    inputs = [getattr(args, "file", None) or getattr(args, "name", None)]
    if getattr(args, "g", None):
        inputs.append(args.g)
    try:
        manifest = RunManifest(args.command, inputs,
                               4 if args.horizon is None else args.horizon,
                               args.seed, args.tol, args.out)
        return args.run(args, manifest)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExtensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
