"""Command-line surface: run single operations on modules and morphism
objects, verify fixture manifests suite by suite, and export triangular
matrix algebras.  All file formats are the JSON shapes defined by quivalg
(algebras), repmod (modules) and morphcat (morphism objects).

Exit codes: 0 success, including a verification whose only failures were
predicted by the manifest and matched; 1 malformed input; 2 violated
precondition, named in the diagnostic; 3 internal error; 4 verification ran
but an expectation in the manifest was not met.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .arsubcat import (
    check_tau_is_syzygy,
    classify_gp_census,
    gorenstein_profile,
    indec_pool,
    tau_gprj,
    tau_pfin,
    tr_p_lambda,
    verify_ar_duality,
)
from .errors import PreconditionError
from .homalg import ar_translate, syzygy, transpose
from .morphcat import imin, mimo, morph_from_json_dict, morph_to_json_dict
from .quivalg import (
    BoundQuiverAlgebra,
    algebra_from_json_dict,
    algebra_to_json_dict,
    t2_of,
)
from .repmod import (
    Representation,
    is_isomorphic,
    is_projective,
    k_dual,
    module_from_json_dict,
    module_to_json_dict,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_INTERNAL = 3
EXIT_EXPECTATION = 4


class ParseFailure(Exception):
    """Input file missing, unreadable, or structurally malformed."""


def fixtures_dir() -> Path:
    """Directory holding the packaged fixture algebras, modules and
    manifests."""
    return Path(__file__).resolve().parent / "fixtures"


# ---------------------------------------------------------------------------
# File plumbing


def _load_json(path: str | Path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseFailure(f"{path}: expected a JSON object at top level")
    return data


def _load_algebra(path: str | Path) -> BoundQuiverAlgebra:
    data = _load_json(path)
    try:
        return algebra_from_json_dict(data)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseFailure(f"{path} is not a valid algebra file: {exc}") from exc


def _dump_json(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# compute


_MODULE_OPS = ("syzygy", "tau", "tr", "dual", "tau-gprj", "tau-pfin", "imin")
_MORPH_OPS = ("mimo", "tr-p")
_TAU_OPS = ("tau", "tau-gprj", "tau-pfin")
_OPPOSITE_OPS = ("tr", "dual", "tr-p")


def cmd_compute(args: argparse.Namespace) -> int:
    alg = _load_algebra(args.algebra)
    data = _load_json(args.module)
    is_morph = "A" in data
    if is_morph:
        base_id = str(data.get("A", {}).get("algebra") or Path(args.algebra).stem)
    else:
        base_id = str(data.get("algebra") or Path(args.algebra).stem)

    op = args.op
    if op in _MORPH_OPS and not is_morph:
        print(
            f"precondition violated: op '{op}' needs a morphism-object file "
            "(keys A/B/f), got a module file",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION
    if op in _MODULE_OPS and is_morph:
        print(
            f"precondition violated: op '{op}' needs a module file, "
            "got a morphism-object file",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION

    try:
        if is_morph:
            obj = morph_from_json_dict(alg, data)
            mod = None
        else:
            mod = module_from_json_dict(alg, data)
            obj = None
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseFailure(
            f"{args.module} is not a valid input over {args.algebra}: {exc}"
        ) from exc

    out_id = base_id + ".op" if op in _OPPOSITE_OPS else base_id
    res_mod: Representation | None = None
    res_obj = None
    if op == "syzygy":
        res_mod = syzygy(mod)
    elif op == "tau":
        res_mod = ar_translate(mod)
    elif op == "tr":
        res_mod = transpose(mod)
    elif op == "dual":
        res_mod = k_dual(mod)
    elif op == "tau-gprj":
        res_mod = tau_gprj(mod, gorenstein_profile(alg))
    elif op == "tau-pfin":
        res_mod = tau_pfin(mod, gorenstein_profile(alg))
    elif op == "imin":
        res_obj = imin(mod)
    elif op == "mimo":
        res_obj = mimo(obj)[0]
    elif op == "tr-p":
        res_obj = tr_p_lambda(obj)
    else:  # pragma: no cover - argparse restricts choices
        raise ParseFailure(f"unknown op {op!r}")

    if res_mod is not None:
        note = ""
        if op in _TAU_OPS and res_mod.is_zero() and is_projective(mod):
            note = " (projective input)"
        print(f"{op}: dims {list(res_mod.dims)}{note}")
        _dump_json(module_to_json_dict(res_mod, out_id), args.out)
    else:
        print(
            f"{op}: A dims {list(res_obj.a.dims)}, B dims {list(res_obj.b.dims)}"
        )
        _dump_json(morph_to_json_dict(res_obj, out_id), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# t2


def cmd_t2(args: argparse.Namespace) -> int:
    alg = _load_algebra(args.algebra)
    t2, corr = t2_of(alg)
    data = algebra_to_json_dict(t2)
    data["vertex_correspondence"] = {
        str(i): [pair[0], pair[1]] for i, pair in sorted(corr.items())
    }
    _dump_json(data, args.out)
    print(
        f"t2: {t2.quiver.vertices} vertices, {len(t2.quiver.arrows)} arrows, "
        f"dimension {t2.dimension}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


_SUITE_ORDER = ("ar-full", "ar-gprj", "ar-pfin", "gp-census", "tau-syzygy")
_SUITE_CHOICES = _SUITE_ORDER + ("all",)
_DUALITY_TAGS = {"ar-full": "FULL", "ar-gprj": "GPRJ", "ar-pfin": "PFIN"}


@dataclass(frozen=True)
class FixtureManifest:
    """One fixture bundle: an algebra, named modules over it, dimension
    bounds for enumeration, and per-suite expectations frozen from earlier
    oracle runs.  Expectations are optional; when present they are enforced.
    """

    root: Path
    algebra: BoundQuiverAlgebra
    base_algebra: BoundQuiverAlgebra | None
    modules: dict[str, Representation]
    bound: tuple[int, ...]
    expected_indec_count: int | None
    expected_gorenstein: dict | None
    suites: dict[str, dict]


def load_manifest(path: str | Path) -> FixtureManifest:
    data = _load_json(path)
    root = Path(path).resolve().parent
    if "algebra" not in data:
        raise ParseFailure(f"{path}: manifest lacks an 'algebra' entry")
    alg = _load_algebra(root / data["algebra"])
    base = None
    if data.get("base_algebra"):
        base = _load_algebra(root / data["base_algebra"])
        canonical, _ = t2_of(base)
        if canonical != alg:
            raise ParseFailure(
                f"{path}: {data['algebra']} is not the triangular matrix "
                f"algebra of {data['base_algebra']}"
            )
        alg = canonical

    modules: dict[str, Representation] = {}
    for name in sorted(data.get("modules", {})):
        rel = data["modules"][name]
        mdata = _load_json(root / rel)
        try:
            modules[name] = module_from_json_dict(alg, mdata)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseFailure(
                f"{rel}: not a valid module over {data['algebra']}: {exc}"
            ) from exc

    suites = data.get("suites", {})
    if not isinstance(suites, dict):
        raise ParseFailure(f"{path}: 'suites' must map suite names to configs")
    unknown = sorted(set(suites) - set(_SUITE_ORDER))
    if unknown:
        raise ParseFailure(f"{path}: unknown suites {unknown}")
    for suite, cfg in suites.items():
        for member in cfg.get("members", ()):  # type: ignore[union-attr]
            if member not in modules:
                raise ParseFailure(
                    f"{path}: suite {suite} references unknown module {member!r}"
                )

    expected = data.get("expected", {})
    count = expected.get("indec_count")
    return FixtureManifest(
        root=root,
        algebra=alg,
        base_algebra=base,
        modules=modules,
        bound=tuple(int(b) for b in data.get("bound", ())),
        expected_indec_count=None if count is None else int(count),
        expected_gorenstein=expected.get("gorenstein"),
        suites=suites,
    )


@dataclass(frozen=True)
class SuiteResult:
    """One verification row: the mathematical verdict of the suite plus
    whether the manifest's expectation (when any) was met."""

    suite: str
    property_ok: bool
    expectation_met: bool
    detail: str
    payload: dict

    @property
    def status(self) -> str:
        if self.property_ok and self.expectation_met:
            return "PASS"
        if not self.property_ok and self.expectation_met:
            return "FAIL (expected)"
        if self.property_ok:
            return "UNEXPECTED PASS"
        return "FAIL"


def _witness_name(man: FixtureManifest, m: Representation) -> str:
    for name in sorted(man.modules):
        if is_isomorphic(man.modules[name], m):
            return name
    return "unnamed:" + "x".join(str(d) for d in m.dims)


def _run_profile(man: FixtureManifest, seed: int) -> SuiteResult:
    prof = gorenstein_profile(man.algebra)
    payload = {
        "selfinjective": prof.is_selfinjective,
        "d": prof.d,
        "cap_exceeded": prof.cap_exceeded,
    }
    ok = True
    exp = man.expected_gorenstein
    if exp is not None:
        ok = bool(exp.get("selfinjective")) == prof.is_selfinjective and (
            exp.get("d", prof.d) == prof.d
        )
    detail = f"self-injective={prof.is_selfinjective}, d={prof.d}"
    if prof.cap_exceeded:
        detail += " (cap exceeded)"
    return SuiteResult("profile", ok, ok, detail, payload)


def _run_indec_pool(man: FixtureManifest, seed: int) -> SuiteResult:
    pool = indec_pool(man.algebra, man.bound, seed=seed)
    payload = {"count": len(pool), "dims": [list(m.dims) for m in pool]}
    ok = True
    notes = [f"{len(pool)} indecomposables under bound {list(man.bound)}"]
    if man.expected_indec_count is not None and len(pool) != man.expected_indec_count:
        ok = False
        notes.append(f"expected {man.expected_indec_count}")
    missing = [
        name
        for name, m in sorted(man.modules.items())
        if not any(is_isomorphic(m, q) for q in pool)
    ]
    if missing:
        ok = False
        notes.append("named modules not found in pool: " + ", ".join(missing))
    return SuiteResult("indec-pool", ok, ok, "; ".join(notes), payload)


def _run_duality(suite: str, man: FixtureManifest, seed: int) -> SuiteResult:
    cfg = man.suites.get(suite, {})
    names = list(cfg.get("members", sorted(man.modules)))
    items = [(name, man.modules[name]) for name in names]
    report = verify_ar_duality(man.algebra, _DUALITY_TAGS[suite], items)
    payload = {
        "all_equal": report.all_equal,
        "pairs": [list(p) for p in report.pairs],
    }
    expectation_met = True
    if "all_equal" in cfg:
        expectation_met = report.all_equal == bool(cfg["all_equal"])
    if expectation_met and "pairs" in cfg:
        expectation_met = len(report.pairs) == int(cfg["pairs"])
    bad = [p for p in report.pairs if not p[4]]
    if report.all_equal:
        detail = f"{len(report.pairs)} pairs checked, all equal"
    else:
        shown = "; ".join(
            f"({x}, {y}) hom-bar {lhs} vs ext {rhs}" for x, y, lhs, rhs, _ in bad[:4]
        )
        detail = (
            f"{len(report.pairs)} pairs checked, {len(bad)} unequal: {shown}"
        )
    return SuiteResult(suite, report.all_equal, expectation_met, detail, payload)


def _run_gp_census(man: FixtureManifest, seed: int) -> SuiteResult:
    cfg = man.suites.get("gp-census", {})
    bound = tuple(int(b) for b in cfg.get("bound", list(man.bound) * 2))
    target = man.base_algebra if man.base_algebra is not None else man.algebra
    census = classify_gp_census(target, bound)
    payload = {"counts": census.counts, "objects": [list(o) for o in census.objects]}
    exp = cfg.get("counts")
    ok = True
    if exp is not None:
        want = {key: int(exp.get(key, 0)) for key in ("a", "b", "c", "other")}
        ok = census.counts == want
    c = census.counts
    detail = (
        f"census {{a: {c['a']}, b: {c['b']}, c: {c['c']}, other: {c['other']}}}"
    )
    if not ok:
        detail += f", expected {exp}"
    return SuiteResult("gp-census", ok, ok, detail, payload)


def _run_tau_syzygy(man: FixtureManifest, seed: int) -> SuiteResult:
    cfg = man.suites.get("tau-syzygy", {})
    bound = tuple(int(b) for b in cfg.get("bound", man.bound))
    holds, witnesses = check_tau_is_syzygy(man.algebra, bound, seed=seed)
    named = [
        {
            "witness": _witness_name(man, g),
            "dims": list(g.dims),
            "translate_dims": list(t.dims),
            "syzygy_dims": list(om.dims),
        }
        for g, t, om in witnesses
    ]
    named.sort(key=lambda w: (w["witness"], w["dims"]))
    payload = {"holds": holds, "witnesses": named}
    expectation_met = True
    if "holds" in cfg:
        expectation_met = holds == bool(cfg["holds"])
    if expectation_met and "witnesses" in cfg:
        expectation_met = sorted(w["witness"] for w in named) == sorted(
            cfg["witnesses"]
        )
    if holds:
        detail = "translate agrees with the syzygy on every non-projective GP module"
    else:
        shown = ", ".join(
            f"{w['witness']} dims {w['dims']} "
            f"(translate {w['translate_dims']}, syzygy {w['syzygy_dims']})"
            for w in named
        )
        detail = f"translate differs from syzygy; witnesses: {shown}"
    return SuiteResult("tau-syzygy", holds, expectation_met, detail, payload)


def _suite_runner(suite: str):
    if suite in _DUALITY_TAGS:
        return lambda man, seed: _run_duality(suite, man, seed)
    if suite == "gp-census":
        return _run_gp_census
    if suite == "tau-syzygy":
        return _run_tau_syzygy
    raise ParseFailure(f"unknown suite {suite!r}")


def _worker_count() -> int:
    raw = os.environ.get("ARSUBCAT_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def cmd_verify(args: argparse.Namespace) -> int:
    man = load_manifest(args.manifest)
    seed = args.seed
    if args.suite == "all":
        planned = [("profile", _run_profile), ("indec-pool", _run_indec_pool)]
        planned += [
            (suite, _suite_runner(suite))
            for suite in _SUITE_ORDER
            if suite in man.suites
        ]
    else:
        planned = [(args.suite, _suite_runner(args.suite))]

    workers = _worker_count()
    if workers > 1 and len(planned) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run, man, seed) for _, run in planned]
            results = [f.result() for f in futures]
    else:
        results = [run(man, seed) for _, run in planned]

    width = max(len(r.suite) for r in results)
    for r in results:
        print(f"{r.suite:<{width}}  {r.status:<16}  {r.detail}")
    ok = all(r.expectation_met for r in results)
    matched = sum(1 for r in results if r.expectation_met and not r.property_ok)
    if ok and matched:
        print(f"RESULT: PASS ({matched} expected failure(s) matched)")
    elif ok:
        print("RESULT: PASS")
    else:
        print("RESULT: FAIL")

    if args.json:
        report = {
            "manifest": Path(args.manifest).name,
            "suite": args.suite,
            "seed": seed,
            "all_expectations_met": ok,
            "results": [
                {
                    "suite": r.suite,
                    "status": r.status,
                    "property_ok": r.property_ok,
                    "expectation_met": r.expectation_met,
                    "detail": r.detail,
                    "data": r.payload,
                }
                for r in results
            ],
        }
        _dump_json(report, args.json)
    return EXIT_OK if ok else EXIT_EXPECTATION


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arquiver",
        description=(
            "Exact computations in the module and morphism categories of "
            "bound quiver algebras over prime fields."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser(
        "compute", help="run one operation on a module or morphism object"
    )
    compute.add_argument("--algebra", required=True, help="algebra JSON file")
    compute.add_argument(
        "--module", required=True, help="module or morphism-object JSON file"
    )
    compute.add_argument("--op", required=True, choices=_MODULE_OPS + _MORPH_OPS)
    compute.add_argument("--out", help="write the result JSON here")
    compute.set_defaults(func=cmd_compute)

    verify = sub.add_parser("verify", help="run verification suites on a manifest")
    verify.add_argument("--manifest", required=True, help="fixture manifest JSON")
    verify.add_argument("--suite", required=True, choices=_SUITE_CHOICES)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--json", help="write the machine-readable report here")
    verify.set_defaults(func=cmd_verify)

    t2 = sub.add_parser(
        "t2", help="export the triangular matrix algebra of an algebra"
    )
    t2.add_argument("--algebra", required=True, help="algebra JSON file")
    t2.add_argument("--out", help="write the algebra JSON here")
    t2.set_defaults(func=cmd_t2)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(
            f"precondition violated ({type(exc).__name__}): {exc}", file=sys.stderr
        )
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001 - fault barrier for exit code 3
        print(f"internal error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
