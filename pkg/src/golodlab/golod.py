"""The verdict engine: Serre bound series, Golod tests with exact certificates
and refutations, and consistency verifiers for the transfer theorems.

Verdict semantics are strictly epistemic:

* ``CertifiedGolod`` only comes from an exact, non-truncated argument (the
  derivative-ideal membership certificate in characteristic zero).
* ``RefutedNotGolod`` carries a reproducible witness: either an exact Betti
  coefficient strictly below the bound, a nonzero homology product, or a
  non-vanishing Massey system.
* ``ConsistentUpTo(h, d)`` says every certified-exact coefficient matches the
  bound through homological degree h inside internal-degree window d.
* ``Inconclusive`` is returned whenever a mismatch could be a truncation
  artifact or an exact input is unavailable.
"""
from __future__ import annotations

from .algebra import (
    FiniteGradedAlgebra,
    FiniteGradedModule,
    GradedAlgebraMap,
    algebra_as_module,
    fibre_product,
    generated_subspaces,
    ideal_as_module,
    iterated_fibre,
    min_gens,
    min_gens_module,
    quotient_by_subspaces,
    residue_field,
    restrict_module,
    submodule_from_subspaces,
    trivial_extension,
)
from .errors import CapError, GolodlabError, InternalInvariantError
from .groebner import buchberger, ideal_contains
from .koszul import (
    KoszulComplex,
    koszul_complex,
    koszul_of_module,
    koszul_polynomial,
)
from .massey import MasseyResult, massey_product
from .poly import HomogeneousIdeal, derivative_ideal
from .resolution import (
    default_caps,
    largeness_test,
    minimal_resolution,
    resolution_over_poly_ring,
)
from .series import TruncatedSeries


class GolodVerdict:
    def __init__(self, kind: str, **data):
        self.kind = kind
        self.data = data

    def __repr__(self):
        extra = ""
        if self.kind == "ConsistentUpTo":
            extra = f"({self.data.get('h')}, {self.data.get('d')})"
        elif self.kind == "RefutedNotGolod":
            extra = f"({self.data.get('witness', {}).get('type')})"
        return f"{self.kind}{extra}"

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.data}

    @property
    def is_exact(self) -> bool:
        return self.kind in ("CertifiedGolod", "RefutedNotGolod")


class SerreBound:
    """kappa_M(t) / (1 - t(kappa_R(t) - 1)) as an exact integer series."""

    def __init__(self, series: TruncatedSeries, kappa_module: list[int], kappa_ring: list[int]):
        self.series = series
        self.kappa_module = kappa_module
        self.kappa_ring = kappa_ring


def serre_bound(kappa_module: list[int], kappa_ring: list[int], h_cap: int) -> SerreBound:
    if not kappa_ring or kappa_ring[0] != 1:
        raise GolodlabError("kappa of the ring must have constant term 1 (connectedness)")
    n = h_cap + 1
    num = TruncatedSeries.from_polynomial(kappa_module, n)
    kr = TruncatedSeries.from_polynomial(kappa_ring, n)
    denom = TruncatedSeries.one(n).sub(kr.sub(TruncatedSeries.one(n)).shift(1))
    return SerreBound(num.div(denom), list(kappa_module), list(kappa_ring))


class GolodAnalysis:
    """Everything the pipeline learned about one (algebra, module) instance."""

    def __init__(self):
        self.verdict: GolodVerdict | None = None
        self.betti = None
        self.poincare: TruncatedSeries | None = None
        self.kappa_module: list[int] | None = None
        self.kappa_ring: list[int] | None = None
        self.bound: TruncatedSeries | None = None
        self.certificate: dict | None = None
        self.product_witness: dict | None = None
        self.massey_results: list = []
        self.h_cap = None
        self.d_cap = None
        self.notes: list[str] = []


def _exact_kappas(A: FiniteGradedAlgebra, M: FiniteGradedModule):
    """(kappa_M, kappa_R, KR, KM) with complexes present when computable."""
    if A.complete and M.complete:
        KR = koszul_complex(A)
        KM = koszul_of_module(KR, M)
        return koszul_polynomial(KM), koszul_polynomial(KR), KR, KM
    if A.kind() == "quotient":
        S = A.provenance["ring"]
        I = A.provenance["ideal"]
        if min_gens(A).count != S.nvars:
            raise CapError(
                "presentation is not minimal; exact kappa needs the minimal Cohen presentation"
            )
        res = resolution_over_poly_ring(S, I)
        kr = [res.betti().total(i) for i in range(len(res.steps))]
        while len(kr) > 1 and kr[-1] == 0:
            kr.pop()
        if M.name == "k" and M.dims[0] == 1 and sum(M.dims) == 1:
            from math import comb

            km = [comb(S.nvars, l) for l in range(S.nvars + 1)]
            return km, kr, None, None
        raise CapError("exact kappa of a general module needs a window-complete algebra")
    raise CapError("exact kappa needs a certified-finite algebra")


def golod_module_test(A: FiniteGradedAlgebra, M: FiniteGradedModule,
                      h_cap: int | None = None, d_cap: int | None = None,
                      massey_depth: int = 2, massey_tuple_budget: int = 200) -> GolodAnalysis:
    """The full verdict pipeline for 'is M a Golod A-module'."""
    out = GolodAnalysis()
    if M.is_zero():
        raise GolodlabError("Golod question for the zero module")

    md = A.max_ideal()
    max_m = max(md.degrees(), default=1)
    mod_gens = min_gens_module(M)
    max_mod = max((d for d, _, _ in mod_gens), default=0)
    h, d_default = default_caps(max_m, max_mod, h_cap)
    d = d_cap if d_cap is not None else d_default
    d = min(d, A.dcap, M.dcap)
    if d < 1 or h < 1:
        raise CapError("window collapsed to nothing")
    out.h_cap, out.d_cap = h, d

    # (a) exact Koszul polynomials
    try:
        kappa_M, kappa_R, KR, KM = _exact_kappas(A, M)
    except CapError as exc:
        out.verdict = GolodVerdict("Inconclusive", reason=str(exc))
        out.notes.append("kappa unavailable")
        return out
    out.kappa_module, out.kappa_ring = kappa_M, kappa_R
    bound = serre_bound(kappa_M, kappa_R, h).series
    out.bound = bound

    # (b) truncated Poincare series
    res = minimal_resolution(A, M, h, d)
    table = res.betti()
    out.betti = table
    P = table.poincare()
    out.poincare = P

    # hard invariant: no coefficient, exact or lower bound, may exceed the bound
    P.assert_termwise_at_most(bound, what="Poincare series vs Serre bound")

    # (c) series refutation on exact coefficients
    witness = None
    for i in range(min(len(P.coeffs), len(bound.coeffs))):
        if P.complete[i] and P.coeffs[i] < bound.coeffs[i]:
            witness = {
                "type": "series-mismatch",
                "i": i,
                "computed": P.coeffs[i],
                "bound": bound.coeffs[i],
                "betti_row": sorted(table.rows[i].items()),
            }
            break
    if witness is None:
        for i in range(min(len(P.coeffs), len(bound.coeffs))):
            if not P.complete[i] and P.coeffs[i] < bound.coeffs[i]:
                out.notes.append(
                    f"coefficient {i} is below the bound but the step is window-incomplete"
                )
                break

    # (d) product refuter (Koszul homology products must vanish for Golod pairs)
    if witness is None and KR is not None:
        witness = _product_refuter(KR, KM)
        if witness is not None:
            out.product_witness = witness
    if witness is None and KR is not None and massey_depth >= 3:
        witness = _massey_refuter(KR, KM, massey_depth, massey_tuple_budget, out)

    # (f) exact certificate (characteristic zero, quotient presentation)
    certificate = None
    if A.kind() == "quotient" and A.field.characteristic == 0:
        cert = herzog_huneke_certify(A.provenance["ring"], A.provenance["ideal"], M=M)
        if cert.get("certified"):
            certificate = cert
            out.certificate = cert

    if certificate is not None and witness is not None:
        raise InternalInvariantError(f"certificate and refutation coexist: {witness}")
    if certificate is not None:
        for i in range(min(len(P.coeffs), len(bound.coeffs))):
            if P.complete[i] and P.coeffs[i] != bound.coeffs[i]:
                raise InternalInvariantError("certified instance with an exact series mismatch")
    if witness is not None:
        out.verdict = GolodVerdict("RefutedNotGolod", witness=witness)
        return out

    h_consistent = -1
    for i in range(min(len(P.coeffs), len(bound.coeffs))):
        if P.complete[i] and P.coeffs[i] == bound.coeffs[i]:
            h_consistent = i
        else:
            break
    # a fully settled window answers the question inside it; the exact
    # certificate upgrades the verdict only where truncation left a gap
    if h_consistent == h:
        out.verdict = GolodVerdict("ConsistentUpTo", h=h_consistent, d=d)
    elif certificate is not None:
        out.verdict = GolodVerdict("CertifiedGolod", certificate=certificate)
    elif h_consistent >= 0:
        out.verdict = GolodVerdict("ConsistentUpTo", h=h_consistent, d=d)
    else:
        out.verdict = GolodVerdict("Inconclusive",
                                   reason="no window-complete homological step")
    return out


def golod_ring_test(A: FiniteGradedAlgebra, h_cap: int | None = None,
                    d_cap: int | None = None, massey_depth: int = 2) -> GolodAnalysis:
    return golod_module_test(A, residue_field(A), h_cap=h_cap, d_cap=d_cap,
                             massey_depth=massey_depth)


def _product_refuter(KR: KoszulComplex, KM: KoszulComplex | None):
    """First nonzero product H_{>=1}(A).H_{>=1}(A) or H_{>=1}(A).H(M)."""
    from .koszul import koszul_mul

    ring_basis = KR.homology_basis(min_l=1)
    for a in range(len(ring_basis)):
        for b in range(a, len(ring_basis)):
            x = KR.homology_rep(*ring_basis[a])
            y = KR.homology_rep(*ring_basis[b])
            cls = KR.class_coords(koszul_mul(KR, x, KR, y))
            if cls:
                return {
                    "type": "nonzero-product", "mode": "ring",
                    "left": list(ring_basis[a]), "right": list(ring_basis[b]),
                    "class": {f"l={k[0]},d={k[1]}": [str(c) for c in v]
                              for k, v in sorted(cls.items())},
                }
    if KM is not None:
        for h in ring_basis:
            x = KR.homology_rep(*h)
            for v in KM.homology_basis():
                y = KM.homology_rep(*v)
                cls = KM.class_coords(koszul_mul(KR, x, KM, y))
                if cls:
                    return {
                        "type": "nonzero-product", "mode": "module",
                        "left": list(h), "right": list(v),
                        "class": {f"l={k[0]},d={k[1]}": [str(c) for c in vv]
                                  for k, vv in sorted(cls.items())},
                    }
    return None


def _massey_refuter(KR, KM, depth: int, tuple_budget: int, out: GolodAnalysis):
    ring_basis = KR.homology_basis(min_l=1)
    mod_basis = KM.homology_basis() if KM is not None else []
    tuples = []
    if depth >= 3:
        for v1 in mod_basis:
            for v2 in ring_basis:
                for v3 in ring_basis:
                    tuples.append(("module", [v1, v2, v3]))
        for v1 in ring_basis:
            for v2 in ring_basis:
                for v3 in ring_basis:
                    tuples.append(("ring", [v1, v2, v3]))
    for mode, vs in tuples[:tuple_budget]:
        r = massey_product(KR, KM, vs, mode=mode)
        out.massey_results.append((mode, vs, r.kind))
        if r.kind == "NonVanishing":
            return {"type": "nonvanishing-massey", "mode": mode,
                    "arguments": [list(v) for v in vs], **r.to_json()}
    return None


# ---------------------------------------------------------------------------
# the exact certificate
# ---------------------------------------------------------------------------


def herzog_huneke_certify(S, I: HomogeneousIdeal, M: FiniteGradedModule | None = None) -> dict:
    """Membership certificate: d(I)^2 in I and d(I).M = 0 prove M Golod over S/I.

    Returns {"certified": bool, ...}; a failed condition is NotApplicable, not a
    refutation (the condition is only sufficient).
    """
    if S.field.characteristic != 0:
        return {"certified": False, "reason": "characteristic-zero hypothesis fails"}
    dI = derivative_ideal(I)
    for a in range(len(dI.gens)):
        for b in range(a, len(dI.gens)):
            prod = dI.gens[a] * dI.gens[b]
            if not ideal_contains(prod, I):
                return {
                    "certified": False,
                    "reason": "derivative square not inside the ideal",
                    "witness": f"({dI.gens[a]})*({dI.gens[b]})",
                }
    # annihilation: for the residue field this is positivity of the degrees
    if M is None or (sum(M.dims) == 1 and M.dims[0] == 1):
        from .poly import ZERO_DEGREE

        for g in dI.gens:
            dgen = g.weighted_degree()
            if dgen is ZERO_DEGREE or dgen == 0:
                return {"certified": False,
                        "reason": "a derivative generator is a unit; it cannot annihilate k",
                        "witness": str(g)}
        ann = "k"
    else:
        A = M.algebra
        if A.kind() != "quotient" or A.provenance["ideal"] is not I:
            # the module must live over S/I for the annihilation check
            if A.kind() != "quotient":
                return {"certified": False, "reason": "module does not live over a quotient of S"}
        from .algebra import poly_class_vector
        from .groebner import normal_form

        gens = min_gens_module(M)
        gb = buchberger(A.provenance["ideal"])
        for g in dI.gens:
            r = normal_form(g, gb)
            if r.is_zero():
                continue
            ddeg, vec = poly_class_vector(A, r)
            for d0, mvec, _ in gens:
                if d0 + ddeg > M.dcap and M.complete:
                    continue
                img = M.act(ddeg, d0, vec, mvec)
                if any(not A.field.is_zero(c) for c in img):
                    return {"certified": False,
                            "reason": "a derivative generator does not annihilate the module",
                            "witness": str(g)}
        ann = "module generators"
    return {
        "certified": True,
        "derivative_generators": [str(g) for g in dI.gens],
        "pairs_checked": len(dI.gens) * (len(dI.gens) + 1) // 2,
        "annihilates": ann,
    }


# ---------------------------------------------------------------------------
# theorem verifiers
# ---------------------------------------------------------------------------


def _bucket(verdict: GolodVerdict) -> str:
    return {
        "CertifiedGolod": "golod",
        "ConsistentUpTo": "golod-window",
        "RefutedNotGolod": "not-golod",
        "Inconclusive": "unknown",
    }[verdict.kind]


def _equivalence(b1: str, b2: str) -> str:
    """Three-valued equivalence check on verdict buckets."""
    if "unknown" in (b1, b2):
        return "inconclusive"
    pos = {"golod", "golod-window"}
    if (b1 in pos) == (b2 in pos):
        return "holds"
    if {b1, b2} == {"golod", "not-golod"}:
        return "violated"
    # a window-consistent side against an exact refutation is insufficient data
    return "inconclusive"


def _implication(premise: str, conclusion: str) -> str:
    if premise == "unknown" or conclusion == "unknown":
        return "inconclusive"
    pos = {"golod", "golod-window"}
    if premise not in pos:
        return "holds"  # vacuous
    if conclusion in pos:
        return "holds"
    if premise == "golod" and conclusion == "not-golod":
        return "violated"
    return "inconclusive"


def _series_identity(lhs: TruncatedSeries, rhs: TruncatedSeries, min_overlap: int = 3) -> str:
    n = min(len(lhs.coeffs), len(rhs.coeffs))
    compared = 0
    for i in range(n):
        if lhs.complete[i] and rhs.complete[i]:
            if lhs.coeffs[i] != rhs.coeffs[i]:
                return "violated"
            compared += 1
        else:
            break
    return "holds" if compared >= min_overlap else "inconclusive"


def verify_theorem(name: str, instance: dict, h_cap: int | None = None,
                   d_cap: int | None = None) -> dict:
    """Compute both sides of a named transfer statement and compare."""
    name = name.lower().replace("_", "-").replace(".", "")
    handler = _THEOREMS.get(name)
    if handler is None:
        raise GolodlabError(f"unknown theorem {name!r}; available: {sorted(_THEOREMS)}")
    return handler(instance, h_cap, d_cap)


def _thm_trivial_extension(instance, h_cap, d_cap):
    R: FiniteGradedAlgebra = instance["R"]
    M: FiniteGradedModule = instance["M"]
    A = trivial_extension(R, M)
    ring_side = golod_ring_test(A, h_cap=h_cap, d_cap=d_cap)
    module_side = golod_module_test(R, M, h_cap=h_cap, d_cap=d_cap)
    status = _equivalence(_bucket(ring_side.verdict), _bucket(module_side.verdict))
    return {
        "name": "trivial-extension-equivalence",
        "status": status,
        "ring_side": ring_side.verdict.to_json(),
        "module_side": module_side.verdict.to_json(),
    }


def _fibre_setup(instance):
    R: FiniteGradedAlgebra = instance["R"]
    subs = instance["ideal_subspaces"]
    S0, eps = quotient_by_subspaces(R, subs)
    A = fibre_product(R, R, eps, eps)
    return R, subs, A


def _thm_fibre_square(instance, h_cap, d_cap):
    R, subs, A = _fibre_setup(instance)
    Imod = submodule_from_subspaces(algebra_as_module(R), subs, name="I")
    ring_side = golod_ring_test(A, h_cap=h_cap, d_cap=d_cap)
    ideal_side = golod_module_test(R, Imod, h_cap=h_cap, d_cap=d_cap)
    k1, k2 = A.provenance["kernel_subspaces"]
    II = submodule_from_subspaces(algebra_as_module(A),
                                  {d: k1[d] + k2[d] for d in range(A.dcap + 1)}, name="I(+)I")
    sum_side = golod_module_test(A, II, h_cap=h_cap, d_cap=d_cap)
    s1 = _equivalence(_bucket(ring_side.verdict), _bucket(ideal_side.verdict))
    s2 = _equivalence(_bucket(ideal_side.verdict), _bucket(sum_side.verdict))
    status = "violated" if "violated" in (s1, s2) else (
        "inconclusive" if "inconclusive" in (s1, s2) else "holds")
    return {
        "name": "fibre-square-three-way",
        "status": status,
        "ring": ring_side.verdict.to_json(),
        "ideal_over_base": ideal_side.verdict.to_json(),
        "kernel_sum_over_fibre": sum_side.verdict.to_json(),
    }


def _thm_iterated_fibre(instance, h_cap, d_cap):
    R: FiniteGradedAlgebra = instance["R"]
    subs = instance["ideal_subspaces"]
    ns = instance.get("copies", [2, 3])
    Imod = submodule_from_subspaces(algebra_as_module(R), subs, name="I")
    ideal_side = golod_module_test(R, Imod, h_cap=h_cap, d_cap=d_cap)
    sides = {}
    statuses = []
    for n in ns:
        An = iterated_fibre(R, subs, n)
        v = golod_ring_test(An, h_cap=h_cap, d_cap=d_cap)
        sides[n] = v.verdict.to_json()
        statuses.append(_equivalence(_bucket(v.verdict), _bucket(ideal_side.verdict)))
    status = "violated" if "violated" in statuses else (
        "inconclusive" if "inconclusive" in statuses else "holds")
    return {"name": "iterated-fibre-independence", "status": status,
            "ideal_over_base": ideal_side.verdict.to_json(),
            "fibres": {str(n): v for n, v in sides.items()}}


def _thm_retract_series(instance, h_cap, d_cap):
    """P^A_N = P^R_N / (1 - t P^R_I) on a fibre square."""
    R, subs, A = _fibre_setup(instance)
    N: FiniteGradedModule = instance.get("N") or residue_field(R)
    md = min_gens(A)
    h, d = default_caps(max(md.degrees(), default=1), 0, h_cap)
    d = min(d_cap if d_cap is not None else d, A.dcap)
    Imod = submodule_from_subspaces(algebra_as_module(R), subs, name="I")
    p = A.provenance["sections"][0]
    NA = restrict_module(p, N)
    PAN = minimal_resolution(A, NA, h, d).betti().poincare()
    PRN = minimal_resolution(R, N, h, d).betti().poincare()
    PRI = minimal_resolution(R, Imod, h, d).betti().poincare()
    denom = TruncatedSeries.one(h + 1).sub(PRI.shift(1))
    rhs = PRN.div(denom)
    status = _series_identity(PAN, rhs)
    return {"name": "retract-series-formula", "status": status,
            "lhs": PAN.to_json(), "rhs": rhs.to_json()}


def _thm_kernel_identities(instance, h_cap, d_cap):
    """Same Koszul polynomials and Poincare series for the two section kernels,
    and the generator count mu_A(n) = mu_R(m) + mu_R(I)."""
    R, subs, A = _fibre_setup(instance)
    k1, k2 = A.provenance["kernel_subspaces"]
    j = A.provenance["diagonal"]
    I1 = restrict_module(j, submodule_from_subspaces(algebra_as_module(A), k1, name="I"))
    I2 = restrict_module(j, submodule_from_subspaces(algebra_as_module(A), k2, name="I'"))
    KR = koszul_complex(R) if R.kind() == "quotient" else koszul_complex(R, R.max_ideal())
    kap1 = koszul_polynomial(koszul_of_module(KR, I1))
    kap2 = koszul_polynomial(koszul_of_module(KR, I2))
    md = min_gens(A)
    h, d = default_caps(max(md.degrees(), default=1), 1, h_cap)
    d = min(d_cap if d_cap is not None else d, A.dcap)
    P1 = minimal_resolution(R, I1, h, d).betti().poincare()
    P2 = minimal_resolution(R, I2, h, d).betti().poincare()
    mu_A = md.count
    mu_R = min_gens(R).count
    mu_I = len(min_gens_module(I1))
    ok = kap1 == kap2 and mu_A == mu_R + mu_I
    series_status = _series_identity(P1, P2)
    status = "violated" if (not ok or series_status == "violated") else series_status
    return {"name": "kernel-identities", "status": status,
            "kappa_I": kap1, "kappa_I_prime": kap2,
            "P_I": P1.to_json(), "P_I_prime": P2.to_json(),
            "mu_A": mu_A, "mu_R": mu_R, "mu_I": mu_I}


def _thm_fibre_module_equivalence(instance, h_cap, d_cap):
    """N Golod over A iff N Golod over R and I Golod over R (II' = 0 retract)."""
    R, subs, A = _fibre_setup(instance)
    N: FiniteGradedModule = instance.get("N") or residue_field(R)
    p = A.provenance["sections"][0]
    NA = restrict_module(p, N)
    Imod = submodule_from_subspaces(algebra_as_module(R), subs, name="I")
    left = golod_module_test(A, NA, h_cap=h_cap, d_cap=d_cap)
    rn = golod_module_test(R, N, h_cap=h_cap, d_cap=d_cap)
    ri = golod_module_test(R, Imod, h_cap=h_cap, d_cap=d_cap)
    pos = {"golod", "golod-window"}
    b_left, b_n, b_i = (_bucket(left.verdict), _bucket(rn.verdict), _bucket(ri.verdict))
    if "unknown" in (b_left, b_n, b_i):
        status = "inconclusive"
    else:
        lhs = b_left in pos
        rhs = (b_n in pos) and (b_i in pos)
        if lhs == rhs:
            status = "holds"
        elif left.verdict.is_exact and rn.verdict.is_exact and ri.verdict.is_exact:
            status = "violated"
        else:
            status = "inconclusive"
    return {"name": "retract-module-equivalence", "status": status,
            "over_fibre": left.verdict.to_json(), "module_over_base": rn.verdict.to_json(),
            "kernel_over_base": ri.verdict.to_json()}


def _thm_multiplicativity(instance, h_cap, d_cap):
    """P^A_N = P^A_R . P^R_N for N restricted along the section of a trivial extension."""
    R: FiniteGradedAlgebra = instance["R"]
    M: FiniteGradedModule = instance["M"]
    N: FiniteGradedModule = instance.get("N") or residue_field(R)
    A = trivial_extension(R, M)
    p = A.provenance["section"]
    md = min_gens(A)
    h, d = default_caps(max(md.degrees(), default=1), 0, h_cap)
    d = min(d_cap if d_cap is not None else d, A.dcap)
    NA = restrict_module(p, N)
    RA = restrict_module(p, algebra_as_module(R))
    PAN = minimal_resolution(A, NA, h, d).betti().poincare()
    PAR = minimal_resolution(A, RA, h, d).betti().poincare()
    PRN = minimal_resolution(R, N, h, d).betti().poincare()
    rhs = PAR.mul(PRN)
    status = _series_identity(PAN, rhs)
    return {"name": "retract-multiplicativity", "status": status,
            "lhs": PAN.to_json(), "product": rhs.to_json(),
            "P_A_R": PAR.to_json(), "P_R_N": PRN.to_json()}


def _thm_retract_descent(instance, h_cap, d_cap):
    """Golod over the extension (via the section) descends to the base."""
    R: FiniteGradedAlgebra = instance["R"]
    M: FiniteGradedModule = instance["M"]
    N: FiniteGradedModule = instance.get("N") or residue_field(R)
    A = trivial_extension(R, M)
    p = A.provenance["section"]
    NA = restrict_module(p, N)
    over_a = golod_module_test(A, NA, h_cap=h_cap, d_cap=d_cap)
    over_r = golod_module_test(R, N, h_cap=h_cap, d_cap=d_cap)
    status = _implication(_bucket(over_a.verdict), _bucket(over_r.verdict))
    return {"name": "retract-descent", "status": status,
            "over_extension": over_a.verdict.to_json(), "over_base": over_r.verdict.to_json()}


def _thm_large_transfer(instance, h_cap, d_cap):
    """Along a large surjection, Golod over the source implies Golod over the target."""
    f: GradedAlgebraMap = instance["f"]
    M: FiniteGradedModule = instance["M"]  # module over f.dst
    h = h_cap if h_cap is not None else 4
    d = d_cap if d_cap is not None else min(f.src.dcap, f.dst.dcap)
    largeness = largeness_test(f, h, d)
    MA = restrict_module(f, M)
    over_src = golod_module_test(f.src, MA, h_cap=h_cap, d_cap=d_cap)
    over_dst = golod_module_test(f.dst, M, h_cap=h_cap, d_cap=d_cap)
    if not largeness.is_large_in_window:
        status = "inconclusive"
    else:
        status = _implication(_bucket(over_src.verdict), _bucket(over_dst.verdict))
    return {"name": "large-transfer", "status": status,
            "largeness": largeness.describe(),
            "over_source": over_src.verdict.to_json(),
            "over_target": over_dst.verdict.to_json()}


def _thm_golod_module_needs_golod_ring(instance, h_cap, d_cap):
    A: FiniteGradedAlgebra = instance["A"]
    M: FiniteGradedModule = instance["M"]
    mod = golod_module_test(A, M, h_cap=h_cap, d_cap=d_cap)
    ring = golod_ring_test(A, h_cap=h_cap, d_cap=d_cap)
    status = _implication(_bucket(mod.verdict), _bucket(ring.verdict))
    return {"name": "golod-module-needs-golod-ring", "status": status,
            "module": mod.verdict.to_json(), "ring": ring.verdict.to_json()}


def _augmentation_map(R: FiniteGradedAlgebra):
    subs = {d: [R.basis_vector(d, i) for i in range(R.dim(d))] for d in range(1, R.dcap + 1)}
    subs[0] = []
    return quotient_by_subspaces(R, subs)


def _fibre_over_k(R1: FiniteGradedAlgebra, R2: FiniteGradedAlgebra) -> FiniteGradedAlgebra:
    S0, e1 = _augmentation_map(R1)
    e2 = GradedAlgebraMap(R2, S0, {0: [[R2.field.one()]],
                                   **{d: [] for d in range(1, R2.dcap + 1)}}, name="eps2")
    return fibre_product(R1, R2, e1, e2)


def _thm_lescot(instance, h_cap, d_cap):
    R1: FiniteGradedAlgebra = instance["R1"]
    R2: FiniteGradedAlgebra = instance["R2"]
    A = _fibre_over_k(R1, R2)
    va = golod_ring_test(A, h_cap=h_cap, d_cap=d_cap)
    v1 = golod_ring_test(R1, h_cap=h_cap, d_cap=d_cap)
    v2 = golod_ring_test(R2, h_cap=h_cap, d_cap=d_cap)
    pos = {"golod", "golod-window"}
    b = [_bucket(v.verdict) for v in (va, v1, v2)]
    if "unknown" in b:
        status = "inconclusive"
    else:
        lhs = b[0] in pos
        rhs = (b[1] in pos) and (b[2] in pos)
        status = "holds" if lhs == rhs else (
            "violated" if all(v.verdict.is_exact for v in (va, v1, v2)) else "inconclusive")
    return {"name": "fibre-over-k-equivalence", "status": status,
            "fibre": va.verdict.to_json(), "factor1": v1.verdict.to_json(),
            "factor2": v2.verdict.to_json()}


def _thm_dress_kramer(instance, h_cap, d_cap):
    """1/P^A_k = 1/P^{R1}_k + 1/P^{R2}_k - 1 for the fibre over k."""
    R1: FiniteGradedAlgebra = instance["R1"]
    R2: FiniteGradedAlgebra = instance["R2"]
    A = _fibre_over_k(R1, R2)
    md = min_gens(A)
    h, d = default_caps(max(md.degrees(), default=1), 0, h_cap)
    d = min(d_cap if d_cap is not None else d, A.dcap)
    PA = minimal_resolution(A, residue_field(A), h, d).betti().poincare()
    P1 = minimal_resolution(R1, residue_field(R1), h, min(d, R1.dcap)).betti().poincare()
    P2 = minimal_resolution(R2, residue_field(R2), h, min(d, R2.dcap)).betti().poincare()
    lhs = PA.inverse()
    rhs = P1.inverse().add(P2.inverse()).add_scalar(-1)
    status = _series_identity(lhs, rhs)
    return {"name": "fibre-over-k-series", "status": status,
            "lhs": lhs.to_json(), "rhs": rhs.to_json()}


_THEOREMS = {
    "ap1": _thm_trivial_extension,
    "trivial-extension": _thm_trivial_extension,
    "ap2": _thm_fibre_square,
    "fibre-square": _thm_fibre_square,
    "ap3": _thm_iterated_fibre,
    "iterated-fibre": _thm_iterated_fibre,
    "m1": _thm_retract_series,
    "retract-series": _thm_retract_series,
    "m25": _thm_kernel_identities,
    "kernel-identities": _thm_kernel_identities,
    "m2": _thm_fibre_module_equivalence,
    "retract-module-equivalence": _thm_fibre_module_equivalence,
    "p5": _thm_multiplicativity,
    "multiplicativity": _thm_multiplicativity,
    "p6": _thm_retract_descent,
    "retract-descent": _thm_retract_descent,
    "ap8": _thm_large_transfer,
    "large-transfer": _thm_large_transfer,
    "levingm": _thm_golod_module_needs_golod_ring,
    "golod-module-needs-golod-ring": _thm_golod_module_needs_golod_ring,
    "lescot": _thm_lescot,
    "fibre-over-k": _thm_lescot,
    "dress-kramer": _thm_dress_kramer,
    "fibre-over-k-series": _thm_dress_kramer,
}
