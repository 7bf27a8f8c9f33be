"""Command-line surface: one json problem spec per run, deterministic reports.

Exit codes: 0 completed (refutations included), 2 schema violation,
3 cap overflow, 4 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .algebra import (
    FiniteGradedAlgebra,
    FiniteGradedModule,
    algebra_as_module,
    generated_subspaces,
    ideal_module_from_polys,
    iterated_fibre,
    min_gens,
    min_gens_module,
    presented_module,
    quotient_algebra,
    quotient_surjection,
    residue_field,
    trivial_extension,
)
from .errors import (
    CapError,
    GolodlabError,
    InternalInvariantError,
    PolyParseError,
    SchemaError,
)
from .fields import FieldSpec
from .golod import golod_module_test, golod_ring_test, herzog_huneke_certify, verify_theorem
from .groebner import buchberger
from .koszul import koszul_complex, koszul_of_module
from .massey import massey_product
from .poly import HomogeneousIdeal, NOT_HOMOGENEOUS, WeightedPolyRing, parse_poly
from .resolution import default_caps, hilbert_series, largeness_test, minimal_resolution
from .series import TruncatedSeries

COMMANDS = (
    "betti", "series", "golod-ring", "golod-module", "certify-huneke",
    "massey", "construct", "verify-theorem", "largeness",
)

SCHEMA_VERSION = 1


def _require(cond: bool, message: str):
    if not cond:
        raise SchemaError(message)


def _parse_field(spec) -> FieldSpec:
    if spec in (None, "q", "Q", "rationals"):
        return FieldSpec.rationals()
    if isinstance(spec, str) and spec.startswith("p:"):
        try:
            return FieldSpec.prime(int(spec[2:]))
        except ValueError as exc:
            raise SchemaError(f"field: bad prime literal {spec!r}") from exc
        except GolodlabError as exc:
            raise SchemaError(f"field: {exc}") from exc
    raise SchemaError(f"field: expected 'q' or 'p:PRIME', got {spec!r}")


def _parse_ring(block, field: FieldSpec) -> tuple[WeightedPolyRing, HomogeneousIdeal]:
    _require(isinstance(block, dict), "ring: block must be an object")
    _require("variables" in block, "ring.variables: missing")
    variables = block["variables"]
    _require(isinstance(variables, list) and variables, "ring.variables: nonempty list required")
    weights = block.get("weights", [1] * len(variables))
    _require(isinstance(weights, list) and all(isinstance(w, int) and w > 0 for w in weights),
             "ring.weights: positive integers required")
    _require(len(weights) == len(variables), "ring.weights: one weight per variable")
    try:
        S = WeightedPolyRing(field, variables, weights)
    except GolodlabError as exc:
        raise SchemaError(f"ring: {exc}") from exc
    gens = []
    for idx, text in enumerate(block.get("ideal", [])):
        _require(isinstance(text, str), f"ring.ideal[{idx}]: expected a string")
        try:
            p = parse_poly(text, S)
        except PolyParseError as exc:
            raise SchemaError(f"ring.ideal[{idx}]: {exc}") from exc
        if p.weighted_degree() is NOT_HOMOGENEOUS:
            raise SchemaError(f"ring.ideal[{idx}]: generator is not weighted-homogeneous")
        gens.append(p)
    return S, HomogeneousIdeal(S, gens)


def _module_gen_degree_estimate(block, S: WeightedPolyRing) -> int:
    if block in (None, "residue-field"):
        return 0
    if isinstance(block, dict):
        shift = block.get("shift", 0)
        if "ideal" in block:
            degs = []
            for text in block["ideal"]:
                try:
                    p = parse_poly(text, S)
                except PolyParseError as exc:
                    raise SchemaError(f"module.ideal: {exc}") from exc
                d = p.weighted_degree()
                if d is NOT_HOMOGENEOUS:
                    raise SchemaError("module.ideal: generator not homogeneous")
                degs.append(d if isinstance(d, int) else 0)
            return max(degs, default=0) + shift
        if "presentation" in block:
            gd = block["presentation"].get("generator_degrees", [0])
            return max(gd, default=0) + shift
        return shift
    raise SchemaError(f"module: unrecognized block {block!r}")


def shift_module(M: FiniteGradedModule, s: int) -> FiniteGradedModule:
    if s == 0:
        return M
    _require(s > 0, "module.shift: must be nonnegative")
    if M.complete and M.top() + s > M.dcap:
        raise CapError("module shift pushes generators beyond the window")
    dims = [0] * s + M.dims[: M.dcap + 1 - s]
    action = {}
    for (e, d), table in M._action.items():
        if d + s + e <= M.dcap:
            action[(e, d + s)] = table
    labels = [[] for _ in range(s)] + M.labels[: M.dcap + 1 - s]
    return FiniteGradedModule(M.algebra, dims, action, labels, M.complete,
                              name=f"{M.name}({-s})")


def _build_module(A: FiniteGradedAlgebra, block, S: WeightedPolyRing) -> FiniteGradedModule:
    if block in (None, "residue-field"):
        return residue_field(A)
    _require(isinstance(block, dict), f"module: unrecognized block {block!r}")
    shift = block.get("shift", 0)
    _require(isinstance(shift, int) and shift >= 0, "module.shift: nonnegative integer required")
    if block.get("kind") == "residue-field" or (not ("ideal" in block or "presentation" in block)):
        M = residue_field(A)
    elif "ideal" in block:
        _require(A.kind() == "quotient", "module.ideal: needs a quotient-presented ring")
        try:
            polys = [parse_poly(t, S) for t in block["ideal"]]
        except PolyParseError as exc:
            raise SchemaError(f"module.ideal: {exc}") from exc
        M = ideal_module_from_polys(A, polys, name="I")
    else:
        _require(A.kind() == "quotient", "module.presentation: needs a quotient-presented ring")
        pres = block["presentation"]
        _require(isinstance(pres, dict) and "generator_degrees" in pres and "relations" in pres,
                 "module.presentation: needs generator_degrees and relations")
        try:
            cols = [[parse_poly(t, S) for t in col] for col in pres["relations"]]
        except PolyParseError as exc:
            raise SchemaError(f"module.presentation: {exc}") from exc
        M = presented_module(A, pres["generator_degrees"], cols, name="M")
    return shift_module(M, shift)


def _build_construction(A: FiniteGradedAlgebra, block, S: WeightedPolyRing) -> FiniteGradedAlgebra:
    if block is None:
        return A
    _require(isinstance(block, dict) and "kind" in block, "construction: needs a kind")
    kind = block["kind"]
    if kind == "trivial-extension":
        M = _build_module(A, block.get("module", {"kind": "residue-field", "shift": 1}), S)
        return trivial_extension(A, M)
    if kind in ("fibre", "iterated-fibre"):
        _require("ideal" in block, f"construction.{kind}: needs ideal generators")
        try:
            polys = [parse_poly(t, S) for t in block["ideal"]]
        except PolyParseError as exc:
            raise SchemaError(f"construction.ideal: {exc}") from exc
        from .algebra import poly_class_vector

        gens = [poly_class_vector(A, p) for p in polys if not p.is_zero()]
        subs = generated_subspaces(algebra_as_module(A), gens)
        copies = block.get("copies", 2)
        _require(isinstance(copies, int) and copies >= 2, "construction.copies: integer >= 2")
        return iterated_fibre(A, subs, copies)
    raise SchemaError(f"construction.kind: unknown kind {kind!r}")


def _series_json(s: TruncatedSeries | None):
    return s.to_json() if s is not None else None


def _analysis_sections(analysis) -> dict:
    return {
        "betti": analysis.betti.to_json() if analysis.betti is not None else None,
        "series": {
            "poincare": _series_json(analysis.poincare),
            "kappa_module": analysis.kappa_module,
            "kappa_ring": analysis.kappa_ring,
            "serre_bound": _series_json(analysis.bound),
        },
        "verdict": analysis.verdict.to_json(),
        "witnesses": [w for w in [analysis.verdict.data.get("witness"),
                                  analysis.certificate] if w],
        "notes": analysis.notes,
    }


def run(spec: dict) -> dict:
    """Execute one validated problem spec; returns the report dict."""
    _require(isinstance(spec, dict), "spec: json object required")
    _require(spec.get("schema") == SCHEMA_VERSION, "schema: must be 1")
    command = spec.get("command")
    _require(command in COMMANDS, f"command: must be one of {COMMANDS}")

    field = _parse_field(spec.get("field"))
    _require("ring" in spec, "ring: missing")
    S, I = _parse_ring(spec["ring"], field)

    caps = spec.get("caps", {})
    _require(isinstance(caps, dict), "caps: object required")
    h_cap = caps.get("max_h")
    d_cap = caps.get("max_d")
    for name, v in (("max_h", h_cap), ("max_d", d_cap)):
        _require(v is None or (isinstance(v, int) and v >= 1), f"caps.{name}: positive integer")

    mod_block = spec.get("module")
    mod_deg = _module_gen_degree_estimate(mod_block, S)
    te_block = spec.get("construction")
    if isinstance(te_block, dict) and te_block.get("kind") == "trivial-extension":
        mod_deg = max(mod_deg, _module_gen_degree_estimate(
            te_block.get("module", {"kind": "residue-field", "shift": 1}), S))
    h_eff, d_default = default_caps(max(S.weights), mod_deg, h_cap)
    d_eff = d_cap if d_cap is not None else max(d_default, 2 * max(S.weights))

    started = time.monotonic()
    base = quotient_algebra(S, I, d_eff)
    A = _build_construction(base, te_block, S)

    report: dict = {
        "schema": SCHEMA_VERSION,
        "input": spec,
        "betti": None,
        "series": {"poincare": None, "kappa_module": None, "kappa_ring": None,
                   "serre_bound": None},
        "verdict": None,
        "witnesses": [],
        "meta": {},
    }

    if command == "construct":
        md = min_gens(A)
        report["verdict"] = {
            "kind": "Constructed",
            "provenance": A.kind(),
            "dims": A.dims,
            "complete": A.complete,
            "minimal_generators": {"count": md.count, "degrees": md.degrees()},
            "hilbert": hilbert_series(A).to_json(),
        }
    elif command in ("betti", "series", "golod-ring", "golod-module"):
        if command == "golod-ring":
            M = residue_field(A)
        elif A is base:
            M = _build_module(base, mod_block, S)
        else:
            _require(mod_block in (None, "residue-field"),
                     "module: polynomial module blocks need the base quotient ring")
            M = residue_field(A)
        analysis = golod_module_test(A, M, h_cap=h_eff, d_cap=d_cap)
        report.update(_analysis_sections(analysis))
        if command == "betti":
            report["verdict"] = {"kind": "BettiComputed",
                                 "step_complete": analysis.betti.step_complete
                                 if analysis.betti else None}
    elif command == "certify-huneke":
        M = _build_module(base, mod_block, S) if mod_block not in (None, "residue-field") else None
        cert = herzog_huneke_certify(S, I, M=M)
        report["verdict"] = {"kind": "CertifiedGolod" if cert.get("certified")
                             else "NotApplicable", **cert}
        report["witnesses"] = [cert]
    elif command == "massey":
        mb = spec.get("massey", {})
        _require(isinstance(mb, dict), "massey: object required")
        mode = mb.get("mode", "ring")
        _require(mode in ("ring", "module"), "massey.mode: ring or module")
        length = mb.get("length", 2)
        _require(isinstance(length, int) and length >= 2, "massey.length: integer >= 2")
        if not A.complete:
            raise CapError("massey products need a window-complete algebra")
        KR = koszul_complex(A)
        KM = None
        if mode == "module":
            M = _build_module(A, mod_block, S) if A is base else residue_field(A)
            KM = koszul_of_module(KR, M)
        ring_basis = KR.homology_basis(min_l=1)
        first = KM.homology_basis() if KM is not None else ring_basis
        explicit = mb.get("arguments")
        tuples = []
        if explicit is not None:
            tuples = [tuple(tuple(v) for v in explicit)]
        else:
            def extend(prefix, slots):
                if slots == 0:
                    tuples.append(tuple(prefix))
                    return
                for v in ring_basis:
                    extend(prefix + [v], slots - 1)
            for v1 in first:
                extend([v1], length - 1)
        budget = mb.get("tuple_budget", 500)
        results = []
        all_vanish = True
        witness = None
        for vs in tuples[:budget]:
            r = massey_product(KR, KM, list(vs), mode=mode)
            results.append({"arguments": [list(v) for v in vs], "kind": r.kind})
            if r.kind == "NonVanishing" and witness is None:
                witness = {"arguments": [list(v) for v in vs], **r.to_json()}
            if r.kind != "Vanishes":
                all_vanish = False
        report["verdict"] = {"kind": "MasseySurvey", "mode": mode, "length": length,
                             "tuples_checked": len(results), "all_vanish": all_vanish}
        report["witnesses"] = [witness] if witness else []
        report["meta"]["massey_results"] = results
    elif command == "verify-theorem":
        tb = spec.get("theorem")
        _require(isinstance(tb, dict) and "name" in tb, "theorem: needs a name")
        instance = _theorem_instance(tb, base, S, d_eff)
        result = verify_theorem(tb["name"], instance, h_cap=h_cap, d_cap=d_cap)
        report["verdict"] = {"kind": "TheoremCheck", **result}
    elif command == "largeness":
        sb = spec.get("surjection")
        _require(isinstance(sb, dict) and "ideal" in sb, "surjection: needs ideal generators")
        try:
            extra = [parse_poly(t, S) for t in sb["ideal"]]
        except PolyParseError as exc:
            raise SchemaError(f"surjection.ideal: {exc}") from exc
        J = HomogeneousIdeal(S, I.gens + extra)
        B = quotient_algebra(S, J, d_eff)
        f = quotient_surjection(base, B)
        h_use = h_cap if h_cap is not None else 4
        result = largeness_test(f, h_use, min(d_eff, d_cap or d_eff))
        report["verdict"] = {"kind": "Largeness", "result": result.describe(),
                             "ranks": result.comparison.ranks()}

    elapsed_ms = int((time.monotonic() - started) * 1000)
    report["meta"].update({
        "h_cap": h_eff if command not in ("construct", "certify-huneke") else h_cap,
        "d_cap": d_eff,
        "completeness": report["betti"]["step_complete"] if report.get("betti") else None,
        # fixed to zero in machine reports so identical inputs give identical bytes;
        # the text formatter prints the measured time instead
        "elapsed_ms": 0,
    })
    report["meta"]["_measured_ms"] = elapsed_ms
    return report


def _theorem_instance(tb: dict, base: FiniteGradedAlgebra, S: WeightedPolyRing, d_eff: int) -> dict:
    from .algebra import poly_class_vector

    name = tb["name"].lower().replace("_", "-").replace(".", "")
    instance: dict = {}
    if name in ("ap1", "trivial-extension", "p5", "multiplicativity", "p6", "retract-descent"):
        instance["R"] = base
        instance["M"] = _build_module(base, tb.get("module", {"kind": "residue-field", "shift": 1}), S)
        if tb.get("n-module") is not None:
            instance["N"] = _build_module(base, tb["n-module"], S)
    elif name in ("ap2", "fibre-square", "ap3", "iterated-fibre", "m1", "retract-series",
                  "m25", "kernel-identities", "m2", "retract-module-equivalence"):
        _require("ideal" in tb, f"theorem {name}: needs fibre ideal generators")
        try:
            polys = [parse_poly(t, S) for t in tb["ideal"]]
        except PolyParseError as exc:
            raise SchemaError(f"theorem.ideal: {exc}") from exc
        gens = [poly_class_vector(base, p) for p in polys if not p.is_zero()]
        instance["R"] = base
        instance["ideal_subspaces"] = generated_subspaces(algebra_as_module(base), gens)
        if tb.get("copies"):
            instance["copies"] = tb["copies"]
        if tb.get("n-module") is not None:
            instance["N"] = _build_module(base, tb["n-module"], S)
    elif name in ("levingm", "golod-module-needs-golod-ring"):
        instance["A"] = base
        instance["M"] = _build_module(base, tb.get("module"), S)
    elif name in ("lescot", "fibre-over-k", "dress-kramer", "fibre-over-k-series"):
        _require("ring2" in tb, f"theorem {name}: needs a second ring block")
        S2, I2 = _parse_ring(tb["ring2"], base.field)
        instance["R1"] = base
        instance["R2"] = quotient_algebra(S2, I2, d_eff)
    elif name in ("ap8", "large-transfer"):
        _require("surjection" in tb and "ideal" in tb["surjection"],
                 "theorem ap8: needs surjection.ideal")
        try:
            extra = [parse_poly(t, S) for t in tb["surjection"]["ideal"]]
        except PolyParseError as exc:
            raise SchemaError(f"theorem.surjection: {exc}") from exc
        I = base.provenance["ideal"]
        J = HomogeneousIdeal(S, I.gens + extra)
        B = quotient_algebra(S, J, d_eff)
        instance["f"] = quotient_surjection(base, B)
        instance["M"] = _build_module(B, tb.get("module"), S)
    else:
        raise SchemaError(f"theorem.name: unknown theorem {tb['name']!r}")
    return instance


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def emit(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        clean = {k: v for k, v in report.items()}
        clean["meta"] = {k: v for k, v in report["meta"].items() if not k.startswith("_")}
        return (json.dumps(clean, sort_keys=True, separators=(",", ":"),
                           default=str) + "\n").encode()
    if fmt != "text":
        raise SchemaError(f"format: unknown format {fmt!r}")
    lines = []
    verdict = report.get("verdict") or {}
    lines.append(f"command : {report['input'].get('command')}")
    lines.append(f"verdict : {verdict.get('kind')}")
    for key in ("h", "d", "result", "status", "reason"):
        if key in verdict:
            lines.append(f"  {key} = {verdict[key]}")
    betti = report.get("betti")
    if betti:
        lines.append("betti table (rows i, entries j:beta; ? = window-incomplete):")
        for i, row in enumerate(betti["rows"]):
            mark = " " if betti["step_complete"][i] else "?"
            cells = " ".join(f"{j}:{b}" for j, b in row)
            lines.append(f"  i={i}{mark} {cells}")
    series = report.get("series") or {}
    for label, key in (("P", "poincare"), ("bound", "serre_bound")):
        s = series.get(key)
        if s:
            ts = TruncatedSeries(s["coeffs"], s["complete"])
            lines.append(ts.format(label))
    for name in ("kappa_module", "kappa_ring"):
        if series.get(name) is not None:
            lines.append(f"{name} = {series[name]}")
    for w in report.get("witnesses", []):
        lines.append(f"witness: {w}")
    meta = report.get("meta", {})
    lines.append(f"window  : H_cap={meta.get('h_cap')} D_cap={meta.get('d_cap')}")
    lines.append(f"elapsed : {meta.get('_measured_ms', 0)} ms")
    return ("\n".join(lines) + "\n").encode()


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _run_file(path: str, overrides: dict) -> tuple[dict, int]:
    with open(path, "rb") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"input is not valid json: {exc}") from exc
    if overrides.get("command"):
        spec["command"] = overrides["command"]
    if overrides.get("field"):
        spec["field"] = overrides["field"]
    caps = spec.setdefault("caps", {})
    if overrides.get("max_h"):
        caps["max_h"] = overrides["max_h"]
    if overrides.get("max_d"):
        caps["max_d"] = overrides["max_d"]
    return run(spec), 0


def _worker(args):
    path, overrides, fmt = args
    report, _ = _run_file(path, overrides)
    return path, emit(report, fmt).decode()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="golodlab",
        description="Golod-property verdicts for graded rings and modules",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, help="json problem spec (file or directory)")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--max-h", type=int, default=None)
    parser.add_argument("--max-d", type=int, default=None)
    parser.add_argument("--field", default=None, help="q or p:PRIME, overrides the spec file")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)

    overrides = {"command": args.command, "field": args.field,
                 "max_h": args.max_h, "max_d": args.max_d}
    import os

    try:
        if os.path.isdir(args.input):
            files = sorted(
                os.path.join(args.input, f) for f in os.listdir(args.input)
                if f.endswith(".json")
            )
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    results = list(pool.map(_worker, [(f, overrides, args.format) for f in files]))
            else:
                results = [_worker((f, overrides, args.format)) for f in files]
            for path, text in sorted(results):
                sys.stdout.write(f"== {path} ==\n{text}")
            return 0
        report, code = _run_file(args.input, overrides)
        sys.stdout.buffer.write(emit(report, args.format))
        return code
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except (PolyParseError, GolodlabError) as exc:
        if isinstance(exc, InternalInvariantError):
            import traceback

            print("internal invariant breach — diagnostic dump follows", file=sys.stderr)
            traceback.print_exc()
            return 4
        if isinstance(exc, CapError):
            print(f"cap overflow: {exc}", file=sys.stderr)
            return 3
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
