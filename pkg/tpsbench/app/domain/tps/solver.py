"""
Window solver for transposed Poisson structures.

Every basis element X gets its own half-derivation
phi_X = sum_k c_{X,k} g_k^X, where g_k^X is the k-th generator shifted by
X's indices (alpha_X, i_X). A product X.Y = phi_X(Y) is commutative exactly
when phi_X(Y) = phi_Y(X), which is linear in the c_{X,k}. Each nullspace
basis vector is rebuilt as a TableProduct and re-checked with check_tps;
associativity is never imposed as a constraint. The zero product is always
returned first and labelled trivial.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from tpsbench.app.core.exceptions import InconsistentFamilyError
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.exactnum import GaussianRational, ZERO
from tpsbench.app.domain.halfderiv.checker import all_pairs, check_half_derivation
from tpsbench.app.domain.halfderiv.maps import ShiftMap
from tpsbench.app.domain.linalg import Row, nullspace, verify_nullspace
from tpsbench.app.domain.tps.checks import TpsReport, check_tps
from tpsbench.app.domain.tps.products import TableProduct

logger = logging.getLogger("tpsbench.domain.tps")


def _shifted_image(g: ShiftMap, x: BasisIndex, y: BasisIndex) -> Element:
    """g^x(y): the generator applied to y, moved by x's indices."""
    return Element.from_dict(
        {BasisIndex(b.family, b.alpha + x.alpha, b.i + x.i): c for b, c in g.apply_basis(y).terms}
    )


@dataclass
class TpsSolution:
    """One reconstructed product with its coefficient assignment."""

    product: TableProduct
    report: TpsReport
    coefficients: Dict[Tuple[BasisIndex, int], GaussianRational] = field(default_factory=dict)
    trivial: bool = False

    def assignment(self) -> Dict[BasisIndex, Dict[int, GaussianRational]]:
        """X -> {generator position: c_{X,k}}"""
        out: Dict[BasisIndex, Dict[int, GaussianRational]] = {}
        for (x, k), c in self.coefficients.items():
            out.setdefault(x, {})[k] = c
        return out

    def mutation_element(self) -> Optional[Element]:
        """w = X0.X0 for the unit basis element X0 (L_0 or L_{0,0}); None when not in the table."""
        x0 = BasisIndex("L", ZERO, 0)
        terms = self.product.pair(x0, x0)
        if terms is None:
            return None
        return Element(terms)

    def agrees_with(self, other) -> bool:
        """Same value as `other` on every pair the table defines."""
        for (bx, by), terms in self.product.items():
            expected = other.pair(bx, by)
            if expected is None or Element(expected) != Element(terms):
                return False
        return True


def check_family(alg: AlgebraDef, generators: Sequence[ShiftMap], window: Window,
                 output_window: Optional[Window] = None) -> None:
    """Raises InconsistentFamilyError when a generator is not a half-derivation on the window."""
    pairs = all_pairs(alg.enumerate_basis(window))
    for k, g in enumerate(generators):
        report = check_half_derivation(alg, g, pairs, output_window)
        if not report.ok:
            first = report.residuals[0]
            raise InconsistentFamilyError(
                f"Generator {k} is not a half-derivation on the window",
                details={"generator": k, "pair": [str(first.pair[0]), str(first.pair[1])]},
            )


def solve_tps(alg: AlgebraDef, generators: Sequence[ShiftMap], window: Window,
              output_window: Optional[Window] = None) -> List[TpsSolution]:
    """Find the commutative products X.Y = phi_X(Y) on a window and keep those forming a TPS.

    Args:
        alg: The Lie algebra.
        generators: Half-derivation family generators.
        window: Basis window for X, Y.
        output_window: Formal-family mode for the generator check (truncated series).

    Returns:
        The trivial zero product followed by every nullspace candidate passing check_tps.

    Raises:
        InconsistentFamilyError: if a generator fails the half-derivation check.
    """
    # 1. Generators must be half-derivations
    check_family(alg, generators, window, output_window)

    # 2. Symmetry constraints phi_X(Y) = phi_Y(X)
    domain = alg.enumerate_basis(window)
    n_gen = len(generators)
    col = {(x, k): p * n_gen + k for p, x in enumerate(domain) for k in range(n_gen)}
    rows: List[Row] = []
    for x, y in combinations(domain, 2):
        eqs: Dict[BasisIndex, Row] = {}
        for k, g in enumerate(generators):
            for e, c in _shifted_image(g, x, y).terms:
                row = eqs.setdefault(e, {})
                row[col[(x, k)]] = row.get(col[(x, k)], ZERO) + c
            for e, c in _shifted_image(g, y, x).terms:
                row = eqs.setdefault(e, {})
                row[col[(y, k)]] = row.get(col[(y, k)], ZERO) - c
        for e in sorted(eqs, key=BasisIndex.sort_key):
            row = {c: v for c, v in eqs[e].items() if v}
            if row:
                rows.append(row)

    # 3. Exact nullspace
    vectors = nullspace(rows, len(domain) * n_gen)
    verify_nullspace(rows, vectors, context=f"tps {alg.name}")
    logger.info(
        "TPS symmetry system solved",
        extra={
            "algebra": alg.name,
            "generators": n_gen,
            "unknowns": len(domain) * n_gen,
            "constraints": len(rows),
            "dimension": len(vectors),
        },
    )

    # 4. Reconstruct and re-check
    zero_table = TableProduct("zero", alg, {(x, y): Element() for x in domain for y in domain})
    solutions = [TpsSolution(zero_table, check_tps(zero_table, alg, window), trivial=True)]
    keys = list(col)
    for n, vec in enumerate(vectors):
        coefficients = {keys[c]: v for c, v in vec.items()}
        table: Dict[Tuple[BasisIndex, BasisIndex], Element] = {}
        for p, x in enumerate(domain):
            for y in domain[p:]:
                value = Element()
                for k, g in enumerate(generators):
                    c = coefficients.get((x, k))
                    if c:
                        value = value + _shifted_image(g, x, y).scale(c)
                table[(x, y)] = value
        product = TableProduct(f"tps-{n}", alg, table)
        report = check_tps(product, alg, window)
        if report.is_tps:
            solutions.append(TpsSolution(product, report, coefficients))
        else:
            logger.info("Candidate product rejected", extra={"candidate": n, "algebra": alg.name})
    return solutions
