"""
Workbench service.

One function per command: each takes resolved inputs, runs the domain
operation and returns (result payload, passed). Shared by the CLI and the
HTTP endpoints.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tpsbench.app.core.config import settings
from tpsbench.app.core.exceptions import FamilyRequestError, UsageError
from tpsbench.app.domain.algebra.basis import Window
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.algebra.jacobi import check_jacobi
from tpsbench.app.domain.dsl.parser import parse_element
from tpsbench.app.domain.exactnum import ONE, GaussianRational, ZERO, coerce, parse_scalar, render_scalar
from tpsbench.app.domain.halfderiv.checker import all_pairs, check_half_derivation
from tpsbench.app.domain.halfderiv.families import (
    family_hwn,
    family_w_a_minus1_half,
    family_w_ab,
    family_wn,
    identity_map,
)
from tpsbench.app.domain.halfderiv.maps import ShiftMap, ShiftTerm
from tpsbench.app.domain.halfderiv.solver import classify_interior, output_window, solve_half_derivations
from tpsbench.app.domain.tps.checks import check_tps
from tpsbench.app.domain.tps.products import CommProduct, mutation, w_plain, zero_product
from tpsbench.app.domain.tps.solver import solve_tps
from tpsbench.app.schemas.report import (
    element_records,
    halfderiv_check_payload,
    jacobi_payload,
    shift_map_payload,
    solution_payload,
    tps_payload,
    tps_solution_payload,
)

logger = logging.getLogger("tpsbench.services")

Seeds = Dict[str, Dict[Any, GaussianRational]]
Result = Tuple[Dict[str, Any], bool]

PRODUCT_CHOICES = ("plain-W", "zero", "mutation", "declared")


# Seeds and families

def parse_seed(text: str) -> Tuple[str, Any, GaussianRational]:
    """NAME:KEY=VALUE, e.g. `gamma:0=1`, `a:1,3=-2` (d, m) or `a:2=1` (d alone)."""
    try:
        name, rest = text.split(":", 1)
        key_text, value_text = rest.split("=", 1)
    except ValueError:
        raise UsageError(f"Malformed seed {text!r}; expected NAME:KEY=VALUE", details={"seed": text})
    name = name.strip()
    parts = [p.strip() for p in key_text.split(",")]
    try:
        if len(parts) == 1:
            key: Any = int(parts[0]) if name != "a" else parse_scalar(parts[0])
        elif len(parts) == 2:
            key = (parse_scalar(parts[0]), int(parts[1]))
        else:
            raise ValueError(key_text)
    except ValueError:
        raise UsageError(f"Malformed seed key in {text!r}", details={"seed": text})
    return name, key, parse_scalar(value_text)


def collect_seeds(texts: Sequence[str]) -> Seeds:
    seeds: Seeds = {}
    for text in texts:
        name, key, value = parse_seed(text)
        seeds.setdefault(name, {})[key] = value
    return seeds


def formal_k_window(window: Window, n: int) -> Tuple[int, int]:
    """k range covering every term that reaches an output inside the window."""
    return (window.i_min - 2 * window.i_max - abs(n) - 1, window.i_max - 2 * window.i_min + abs(n) + 1)


def build_family(alg: AlgebraDef, seeds: Seeds, window: Optional[Window] = None) -> ShiftMap:
    """The closed-form half-derivation family of a catalog algebra from named seeds.

    alpha/beta/gamma seeds keyed by t for w_ab and w_abs; `a` seeds keyed by
    (d, m) for wn_g and hwn_g (or by d alone for hwn_g with n = 0).

    Raises:
        FamilyRequestError: for seed names the algebra has no family for.
        UsageError: for a formal hwn_g series requested without a window.
    """
    allowed = {
        "w_ab": {"alpha", "beta"},
        "w_abs": {"alpha", "beta", "gamma"},
        "witt": {"alpha"},
        "wn_g": {"a"},
        "hwn_g": {"a"},
    }.get(alg.name)
    if allowed is None:
        raise FamilyRequestError(f"No closed-form family is known for {alg.name!r}")
    unknown = sorted(set(seeds) - allowed)
    if unknown:
        raise FamilyRequestError(
            f"Seed names {unknown} do not apply to {alg.name}",
            details={"allowed": sorted(allowed)},
        )

    if alg.name == "w_ab":
        return family_w_ab(alg.params["b"], seeds.get("alpha"), seeds.get("beta"))
    if alg.name == "w_abs":
        if alg.params["b"] != -1:
            # b != -1: only multiples of the identity
            family_w_ab(alg.params["b"], seeds.get("alpha"), {**seeds.get("beta", {}), **seeds.get("gamma", {})})
        return family_w_a_minus1_half(seeds.get("alpha"), seeds.get("beta"), seeds.get("gamma"))
    if alg.name == "witt":
        return ShiftMap(ShiftTerm("L", "L", ZERO, t, c) for t, c in seeds.get("alpha", {}).items())
    if alg.name == "wn_g":
        a = seeds.get("a", {})
        if any(not isinstance(k, tuple) for k in a):
            raise FamilyRequestError("wn_g seeds are keyed by (d, m), e.g. a:1,3=1")
        return family_wn(alg, a)
    n = alg.params["n"].to_int()
    a = seeds.get("a", {})
    if window is None and n != 0 and any(coerce(k[0] if isinstance(k, tuple) else k) for k in a):
        raise UsageError(
            "hwn_g with n != 0 needs --imin and --imax to truncate its formal series",
            details={"n": n},
        )
    k_window = formal_k_window(window, n) if window is not None else None
    return family_hwn(alg, a, k_window)


def is_formal(alg: AlgebraDef, family: ShiftMap) -> bool:
    """True for truncated HW series (n != 0 with a d != 0 component)."""
    return alg.name == "hwn_g" and alg.params["n"] != 0 and any(t.alpha_shift for t in family.terms)


def family_generators(alg: AlgebraDef, window: Window, shift_bound: int) -> List[ShiftMap]:
    """Unit generators of the classified half-derivation space, for solve_tps.

    Index shifts range over [-shift_bound, shift_bound], group shifts over the
    window's lattice points.
    """
    shifts = range(-shift_bound, shift_bound + 1)
    name = alg.name
    if name in ("w_ab", "w_abs"):
        if alg.params["b"] != -1:
            return [identity_map(alg)]
        names = ("alpha", "beta", "gamma") if name == "w_abs" else ("alpha", "beta")
        return [build_family(alg, {s: {t: ONE}}) for s in names for t in shifts]
    if name in ("witt", "wn_g"):
        return [
            ShiftMap([ShiftTerm("L", "L", d, m, ONE)])
            for d in alg.lattice.enumerate(window.alpha_coeff_bound)
            for m in shifts
        ]
    if name == "hwn_g":
        n = alg.params["n"].to_int()
        gens = [identity_map(alg)]
        for d in alg.lattice.enumerate(window.alpha_coeff_bound):
            if not d:
                continue
            if n == 0:
                if d.is_integer():
                    gens.append(family_hwn(alg, {d: ONE}))
                continue
            for r in range(abs(n)):
                # representative of the class that is not a positive multiple of n
                m = r - abs(n) if r else 0
                gens.append(family_hwn(alg, {(d, m): ONE}, formal_k_window(window, n)))
        return gens
    raise FamilyRequestError(f"No closed-form family is known for {name!r}")


# Commands

def run_bracket(alg: AlgebraDef, x: str, y: str) -> Result:
    value = alg.bracket(parse_element(x, alg), parse_element(y, alg))
    return {"bracket": element_records(value)}, True


def run_jacobi(alg: AlgebraDef, window: Window) -> Result:
    report = check_jacobi(alg, window)
    return jacobi_payload(report, settings.max_witnesses), report.ok


def run_halfder_family(alg: AlgebraDef, seeds: Seeds, window: Optional[Window] = None) -> Result:
    family = build_family(alg, seeds, window)
    grade_shifts = [render_scalar(d) for d in family.grade_shifts(alg)]
    return {"terms": shift_map_payload(family), "grade_shifts": grade_shifts, "formal": is_formal(alg, family)}, True


def run_halfder_check(alg: AlgebraDef, seeds: Seeds, window: Window) -> Result:
    family = build_family(alg, seeds, window)
    formal = is_formal(alg, family)
    report = check_half_derivation(alg, family, all_pairs(alg.enumerate_basis(window)), window if formal else None)
    payload = halfderiv_check_payload(report, settings.max_witnesses)
    payload["terms"] = shift_map_payload(family)
    payload["formal"] = formal
    return payload, report.ok


def run_halfder_solve(alg: AlgebraDef, shifts: Sequence[str], window: Window, out_pad: int) -> Result:
    results = []
    for text in shifts:
        d = parse_scalar(text)
        space = solve_half_derivations(alg, d, window, output_window(alg, window, d, out_pad))
        results.append(solution_payload(space, classify_interior(space)))
    return {"shifts": results}, True


def select_product(alg: AlgebraDef, kind: str, w: Optional[str] = None,
                   declared: Optional[CommProduct] = None):
    if kind == "plain-W":
        return w_plain(alg)
    if kind == "zero":
        return zero_product(alg)
    if kind == "mutation":
        if w is None:
            raise UsageError("--product mutation needs --w")
        return mutation(declared or w_plain(alg), parse_element(w, alg))
    if kind == "declared":
        if declared is None:
            raise UsageError("The algebra source declares no product rules")
        return declared
    raise UsageError(f"Unknown product {kind!r}", details={"choices": list(PRODUCT_CHOICES)})


def run_tps_check(alg: AlgebraDef, product, window: Window) -> Result:
    report = check_tps(product, alg, window)
    payload = tps_payload(report)
    payload["product"] = product.name
    return payload, report.is_tps


def run_tps_solve(alg: AlgebraDef, window: Window, shift_bound: int) -> Result:
    generators = family_generators(alg, window, shift_bound)
    formal = any(is_formal(alg, g) for g in generators)
    solutions = solve_tps(alg, generators, window, window if formal else None)
    nontrivial = [s for s in solutions if not s.trivial]
    return {
        "generators": [shift_map_payload(g) for g in generators],
        "solutions": [tps_solution_payload(s) for s in solutions],
        "nontrivial_count": len(nontrivial),
    }, True


def run_mutation(alg: AlgebraDef, w: str, x: str, y: str, base: Optional[CommProduct] = None) -> Result:
    product = mutation(base or w_plain(alg), parse_element(w, alg))
    value = product.mul(parse_element(x, alg), parse_element(y, alg))
    return {"product": element_records(value), "base": product.base.name}, True
