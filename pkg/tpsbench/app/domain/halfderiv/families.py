"""
Closed-form half-derivation families.

family_w_ab              W(a,b): shifts on L and I, plus L -> I (nontrivial only for b = -1).
family_w_a_minus1_half   W(a,-1,1/2): alpha, beta, gamma coefficient sets.
family_wn                W_n(G): phi(L_{al,i}) = sum a^{d,m} L_{al+d,i+m}.
family_hwn               HW_n(G): coefficients a^{d,k} from the recurrence
                         d*a^{d,k} + (k-n)*a^{d,k-n} = 0, truncated to a k window.
compose_ad               x -> phi([x,z]) - [phi(x), z].
"""

import logging
from typing import Dict, Mapping, Optional, Tuple, Union

from tpsbench.app.core.exceptions import FamilyRequestError, RecurrenceError
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, accumulate
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.exactnum import GaussianRational, ONE, ZERO, Scalarish, coerce, render_scalar
from tpsbench.app.domain.halfderiv.maps import LinearMap, ShiftMap, ShiftTerm

logger = logging.getLogger("tpsbench.domain.halfderiv")


def _coeffs(values: Optional[Mapping[int, Scalarish]]) -> Dict[int, GaussianRational]:
    return {int(t): coerce(c) for t, c in (values or {}).items() if coerce(c)}


def family_w_ab(b: Scalarish, alphas: Mapping[int, Scalarish] = None,
                betas: Mapping[int, Scalarish] = None) -> ShiftMap:
    """phi(L_m) = sum alpha_t L_{m+t} + sum beta_t I_{m+t}, phi(I_m) = sum alpha_t I_{m+t}.

    Raises:
        FamilyRequestError: for a nontrivial request with b != -1.
    """
    b = coerce(b)
    alphas, betas = _coeffs(alphas), _coeffs(betas)
    trivial = not betas and set(alphas) <= {0}
    if b != -1 and not trivial:
        raise FamilyRequestError(
            "W(a,b) has only trivial half-derivations unless b = -1",
            details={"b": render_scalar(b), "alphas": sorted(alphas), "betas": sorted(betas)},
        )
    terms = []
    for t, c in alphas.items():
        terms.append(ShiftTerm("L", "L", ZERO, t, c))
        terms.append(ShiftTerm("I", "I", ZERO, t, c))
    for t, c in betas.items():
        terms.append(ShiftTerm("L", "I", ZERO, t, c))
    return ShiftMap(terms)


def family_w_a_minus1_half(alphas: Mapping[int, Scalarish] = None, betas: Mapping[int, Scalarish] = None,
                           gammas: Mapping[int, Scalarish] = None) -> ShiftMap:
    """Half-derivations of W(a,-1,1/2).

        phi(L_m)       = sum alpha_t L_{m+t} + sum beta_t I_{m+t} + sum gamma_t Y_{m+t+1/2}
        phi(I_m)       = sum alpha_t I_{m+t}
        phi(Y_{m+1/2}) = sum alpha_t Y_{m+t+1/2} + sum gamma_t I_{m+t+1}
    """
    alphas, betas, gammas = _coeffs(alphas), _coeffs(betas), _coeffs(gammas)
    terms = []
    for t, c in alphas.items():
        for fam in ("L", "I", "Y"):
            terms.append(ShiftTerm(fam, fam, ZERO, t, c))
    for t, c in betas.items():
        terms.append(ShiftTerm("L", "I", ZERO, t, c))
    for t, c in gammas.items():
        terms.append(ShiftTerm("L", "Y", ZERO, t, c))
        terms.append(ShiftTerm("Y", "I", ZERO, t + 1, c))
    return ShiftMap(terms)


def family_wn(alg: AlgebraDef, seeds: Mapping[Tuple[Scalarish, int], Scalarish]) -> ShiftMap:
    """phi(L_{al,i}) = sum over seeds (d, m) of a^{d,m} L_{al+d, i+m}.

    Raises:
        IndexOutsideGroupError: if some d is not in the algebra's group.
    """
    terms = []
    for (d, m), c in seeds.items():
        d = coerce(d)
        alg.lattice.coordinates(d)
        terms.append(ShiftTerm("L", "L", d, int(m), coerce(c)))
    return ShiftMap(terms)


def hwn_coeff(n: int, d: Scalarish, seed_m: int, seed_value: Scalarish, k: int) -> GaussianRational:
    """a^{d,k} propagated from a^{d,seed_m} = seed_value.

    Upward steps use a^{d,k} = -((k-n)/d) a^{d,k-n}, downward steps the inverse.
    For n = 0 the only nonzero coefficient sits at k = -d.

    Raises:
        RecurrenceError: d = 0, k off the seed's residue class, or a downward
            step through a vanishing coefficient.
    """
    d = coerce(d)
    seed_value = coerce(seed_value)
    n, seed_m, k = int(n), int(seed_m), int(k)
    if d.is_zero():
        raise RecurrenceError("The recurrence needs d != 0; d = 0 is the identity component")

    if n == 0:
        # (d + k) a^{d,k} = 0
        if seed_value and d != -seed_m:
            raise RecurrenceError(
                "For n = 0 the only free coefficient is at k = -d",
                details={"d": render_scalar(d), "seed_m": seed_m},
            )
        return seed_value if d == -k else ZERO

    if (k - seed_m) % n != 0:
        if k % n == 0 and k // n >= 1:
            return ZERO
        raise RecurrenceError(
            f"k = {k} is not congruent to the seed index {seed_m} modulo {n}",
            details={"n": n, "seed_m": seed_m, "k": k},
        )
    if seed_m % n == 0 and seed_m // n >= 1 and seed_value:
        raise RecurrenceError(
            "Coefficients at positive multiples of n vanish; the seed must be 0",
            details={"n": n, "seed_m": seed_m},
        )

    steps = (k - seed_m) // n
    value, cur = seed_value, seed_m
    if steps > 0:
        for _ in range(steps):
            # a^{cur+n} = -(cur/d) a^{cur}
            value = -(value * cur) / d
            cur += n
    else:
        for _ in range(-steps):
            prev = cur - n
            if prev == 0:
                raise RecurrenceError(
                    f"Cannot step down to k = 0 from k = {cur}: the recurrence coefficient vanishes",
                    details={"n": n, "k": cur},
                )
            # a^{prev} = -d a^{cur} / prev
            value = -(d * value) / prev
            cur = prev
    return value


def hwn_closed_form(n: int, d: Scalarish, m: int, seed_value: Scalarish, t: int) -> GaussianRational:
    """Closed form of a^{d, m+t*n}.

        t >= 1:  (-1)^t d^{-t} prod_{p=0}^{t-1} (p*n + m) * a^{d,m}
        t <= -1: d^{|t|} / prod_{p=1}^{|t|} (p*n - m) * a^{d,m}

    Used only as a cross-check of hwn_coeff.
    """
    d, seed_value = coerce(d), coerce(seed_value)
    if t == 0:
        return seed_value
    if t > 0:
        prod = ONE
        for p in range(t):
            prod = prod * (p * n + m)
        sign = -1 if t % 2 else 1
        return seed_value * prod * sign / (d ** t)
    prod = ONE
    for p in range(1, -t + 1):
        prod = prod * (p * n - m)
    if not prod:
        raise RecurrenceError("Closed form undefined: a factor p*n - m vanishes", details={"n": n, "m": m, "t": t})
    return seed_value * (d ** (-t)) / prod


HwnSeeds = Mapping[Union[Tuple[Scalarish, int], Scalarish], Scalarish]


def family_hwn(alg: AlgebraDef, seeds: HwnSeeds, k_window: Optional[Tuple[int, int]] = None) -> ShiftMap:
    """Formal half-derivation of HW_n(G) truncated to k in k_window.

    Args:
        alg: An hwn_g algebra (parameter n, families L and H).
        seeds: (d, m) -> a^{d,m}; for n = 0 plain d -> a^{d,-d} is accepted.
            The seed (0, 0) gives a multiple of the identity.
        k_window: Inclusive k range; required when some seed has d != 0 and n != 0.

    Returns:
        ShiftMap with identical L -> L and H -> H coefficients.
    """
    n = alg.params["n"].to_int()
    coefficients: Dict[Tuple[GaussianRational, int], GaussianRational] = {}
    classes: Dict[Tuple[GaussianRational, int], int] = {}

    for key, value in seeds.items():
        if isinstance(key, tuple):
            d, m = coerce(key[0]), int(key[1])
        else:
            d = coerce(key)
            if not d.is_integer():
                raise FamilyRequestError("Seeds given by d alone need an integer d", details={"d": render_scalar(d)})
            m = -d.to_int()
        value = coerce(value)
        alg.lattice.coordinates(d)

        if d.is_zero():
            if m != 0:
                raise FamilyRequestError("The d = 0 component is a multiple of the identity; seed (0, 0) only")
            coefficients[(d, 0)] = coefficients.get((d, 0), ZERO) + value
            continue

        if n == 0:
            hwn_coeff(0, d, m, value, m)
            if value:
                coefficients[(d, m)] = value
            continue

        residue = (d, m % abs(n))
        if residue in classes:
            raise FamilyRequestError(
                "Two seeds share a residue class modulo n",
                details={"d": render_scalar(d), "m": m, "other_m": classes[residue]},
            )
        classes[residue] = m
        if k_window is None:
            raise FamilyRequestError("A k window is required to truncate the formal series for n != 0")
        k_min, k_max = k_window
        for k in range(k_min, k_max + 1):
            if (k - m) % n != 0:
                continue
            c = hwn_coeff(n, d, m, value, k)
            if c:
                coefficients[(d, k)] = c

    terms = []
    for (d, k), c in coefficients.items():
        terms.append(ShiftTerm("L", "L", d, k, c))
        terms.append(ShiftTerm("H", "H", d, k, c))
    logger.debug("HW family built", extra={"n": n, "seeds": len(seeds), "terms": len(terms)})
    return ShiftMap(terms)


class AdCommutator(LinearMap):
    """[phi, ad_z]: x -> phi([x, z]) - [phi(x), z]."""

    def __init__(self, phi: LinearMap, alg: AlgebraDef, z: Element):
        self.phi = phi
        self.alg = alg
        self.z = z

    def apply_basis(self, b: BasisIndex) -> Optional[Element]:
        acc: Dict[BasisIndex, GaussianRational] = {}
        for bz, cz in self.z.terms:
            for t, ct in self.alg.pair(b, bz):
                image = self.phi.apply_basis(t)
                if image is None:
                    return None
                for b2, c2 in image.terms:
                    accumulate(acc, b2, cz * ct * c2)
        phi_b = self.phi.apply_basis(b)
        if phi_b is None:
            return None
        for b1, c1 in phi_b.terms:
            for bz, cz in self.z.terms:
                for b2, c2 in self.alg.pair(b1, bz):
                    accumulate(acc, b2, -(c1 * cz * c2))
        return Element.from_dict(acc)


def compose_ad(phi: LinearMap, alg: AlgebraDef, z: Element) -> AdCommutator:
    return AdCommutator(phi, alg, z)


def identity_map(alg: AlgebraDef, coeff: Scalarish = ONE) -> ShiftMap:
    return ShiftMap.identity(alg.family_names, coeff)
