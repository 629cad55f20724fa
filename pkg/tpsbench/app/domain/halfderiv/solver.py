"""
Window solver for homogeneous half-derivations.

For a grade shift d the unknowns are the coefficients u_{b,c} of
phi(b) = sum_c u_{b,c} c, for b in the input window and c in the output
window with grade(c) = grade(b) + d. Every basis pair (x, y) whose bracket
stays inside the input window contributes one equation per output basis
element e:

    sum_z [x,y]_z u_{z,e} - 1/2 sum_c u_{x,c} [c,y]_e - 1/2 sum_c u_{y,c} [x,c]_e = 0

An equation is kept only when every term it has in the full algebra is an
unknown: e must lie in the output window, and no c outside the output window
of the right grade may reach e through [c,y] or [x,c]. Such c are found in a
halo window around W_out. Dropped equations make the solution space too
large, never too small. classify_interior strips the boundary artifacts by
restricting to a core window and fitting constant-coefficient shift maps.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from tpsbench.app.core.exceptions import SolverInvariantError, WindowError
from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window
from tpsbench.app.domain.algebra.definition import AlgebraDef
from tpsbench.app.domain.exactnum import HALF, GaussianRational, Scalarish, ZERO, coerce, render_scalar
from tpsbench.app.domain.halfderiv.maps import LinearMap, ShiftKey, ShiftMap, ShiftTerm, WindowMap, shift_key_order
from tpsbench.app.domain.linalg import EchelonForm, Row, nullspace, rank, rref, verify_nullspace

logger = logging.getLogger("tpsbench.domain.halfderiv")

Column = Tuple[BasisIndex, BasisIndex]


def output_window(alg: AlgebraDef, w_in: Window, grade_shift: Scalarish, out_pad: int = 0) -> Window:
    """W_in padded by out_pad in i, and by the group height of d when d is a group element."""
    d = coerce(grade_shift)
    alpha_pad = alg.lattice.height(d) if alg.lattice.contains(d) else 0
    return w_in.pad(out_pad, alpha_pad)


@dataclass
class SolutionSpace:
    """Exact nullspace of the windowed half-derivation system for one grade shift."""

    algebra: AlgebraDef
    grade_shift: GaussianRational
    w_in: Window
    w_out: Window
    columns: List[Column]
    rows: List[Row] = field(repr=False)
    vectors: List[Row] = field(repr=False)
    pairs_used: int = 0
    pairs_skipped: int = 0
    constraints_dropped: int = 0

    def __post_init__(self):
        self._column_of: Dict[Column, int] = {c: k for k, c in enumerate(self.columns)}
        self.domain: List[BasisIndex] = self.algebra.enumerate_basis(self.w_in)
        self.codomain: List[BasisIndex] = self.algebra.enumerate_basis(self.w_out)
        self._echelon: Optional[EchelonForm] = None

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> List[WindowMap]:
        return [self.to_window_map(v) for v in self.vectors]

    def to_window_map(self, vec: Row) -> WindowMap:
        acc: Dict[BasisIndex, Dict[BasisIndex, GaussianRational]] = {}
        for col, coeff in vec.items():
            b, c = self.columns[col]
            acc.setdefault(b, {})[c] = coeff
        images = {b: Element.from_dict(terms) for b, terms in acc.items()}
        return WindowMap(self.domain, self.codomain, images)

    def vector_of(self, linear_map: LinearMap) -> Optional[Row]:
        """Coordinates of a map restricted to W_in, or None when some image leaves the unknowns."""
        vec: Row = {}
        for b in self.domain:
            image = linear_map.apply_basis(b)
            if image is None:
                return None
            for c, coeff in image.terms:
                col = self._column_of.get((b, c))
                if col is None:
                    return None
                vec[col] = coeff
        return vec

    def contains(self, linear_map: LinearMap) -> bool:
        """Exact membership of the map's restriction to W_in."""
        vec = self.vector_of(linear_map)
        if vec is None:
            return False
        if not vec:
            return True
        if self._echelon is None:
            self._echelon = EchelonForm(self.vectors)
        return self._echelon.contains(vec)

    def verify(self) -> None:
        """Re-check every basis vector against every constraint row.

        Raises:
            SolverInvariantError: on any violated constraint.
        """
        verify_nullspace(self.rows, self.vectors, context=f"{self.algebra.name} shift {render_scalar(self.grade_shift)}")
        if rank(self.vectors) != len(self.vectors):
            raise SolverInvariantError("Solution basis is linearly dependent", details={"dimension": self.dimension})

    def max_abs_i_shift(self) -> int:
        return max((abs(self.columns[col][1].i - self.columns[col][0].i) for v in self.vectors for col in v), default=0)

    def summary(self) -> Dict:
        return {
            "grade_shift": render_scalar(self.grade_shift),
            "w_in": self.w_in.as_dict(),
            "w_out": self.w_out.as_dict(),
            "unknowns": len(self.columns),
            "constraints": len(self.rows),
            "pairs_used": self.pairs_used,
            "pairs_skipped": self.pairs_skipped,
            "constraints_dropped": self.constraints_dropped,
            "dimension": self.dimension,
        }


def _targets(alg: AlgebraDef, domain: Sequence[BasisIndex], codomain: Sequence[BasisIndex],
             d: GaussianRational) -> Dict[BasisIndex, List[BasisIndex]]:
    by_grade: Dict[GaussianRational, List[BasisIndex]] = {}
    for c in codomain:
        by_grade.setdefault(alg.grade(c), []).append(c)
    return {b: by_grade.get(alg.grade(b) + d, []) for b in domain}


def halo_window(alg: AlgebraDef, w_in: Window, w_out: Window, grade_shift: Scalarish) -> Window:
    """Every c with [c, y] or [y, c] meeting W_out for some y in W_in has its index in this window."""
    d = coerce(grade_shift)
    reach = alg.max_index_shift()
    alpha_pad = alg.lattice.height(d) if alg.lattice.contains(d) else 0
    return Window(
        min(w_out.i_min, w_out.i_min - w_in.i_max - reach),
        max(w_out.i_max, w_out.i_max - w_in.i_min + reach),
        max(w_out.alpha_coeff_bound, w_in.alpha_coeff_bound + alpha_pad),
    )


def solve_half_derivations(alg: AlgebraDef, grade_shift: Scalarish, w_in: Window,
                           w_out: Optional[Window] = None) -> SolutionSpace:
    """Solve for all grade-shift-d half-derivations on a window.

    Args:
        alg: The algebra.
        grade_shift: d; images of b have grade grade(b) + d.
        w_in: Input window (domain of the unknown map).
        w_out: Output window, defaults to W_in.

    Returns:
        SolutionSpace with a canonical basis, already re-verified.

    Raises:
        WindowError: if W_out does not contain W_in.
    """
    d = coerce(grade_shift)
    w_out = w_out or w_in
    if not w_out.contains_window(w_in):
        raise WindowError(
            "Output window must contain the input window",
            details={"w_in": w_in.as_dict(), "w_out": w_out.as_dict()},
        )

    # 1. Unknowns
    domain = alg.enumerate_basis(w_in)
    codomain = alg.enumerate_basis(w_out)
    targets = _targets(alg, domain, codomain, d)
    columns: List[Column] = []
    column_of: Dict[Column, int] = {}
    for b in domain:
        for c in targets[b]:
            column_of[(b, c)] = len(columns)
            columns.append((b, c))

    # 2. Images the window cannot hold
    codomain_set = set(codomain)
    halo = [c for c in alg.enumerate_basis(halo_window(alg, w_in, w_out, d)) if c not in codomain_set]
    missing = _targets(alg, domain, halo, d)

    # 3. Constraints, in pair order
    domain_set = set(domain)
    rows: List[Row] = []
    used = skipped = dropped = 0
    for x, y in combinations(domain, 2):
        bracket_xy = alg.pair(x, y)
        if any(z not in domain_set for z, _ in bracket_xy):
            skipped += 1
            logger.debug("Skipping boundary pair", extra={"x": str(x), "y": str(y)})
            continue
        used += 1
        eqs: Dict[BasisIndex, Row] = {}

        def add(e: BasisIndex, col: int, value: GaussianRational) -> None:
            row = eqs.setdefault(e, {})
            total = row.get(col, ZERO) + value
            if total:
                row[col] = total
            else:
                row.pop(col, None)

        for z, cz in bracket_xy:
            for e in targets[z]:
                add(e, column_of[(z, e)], cz)
        for c in targets[x]:
            for e, ce in alg.pair(c, y):
                add(e, column_of[(x, c)], -HALF * ce)
        for c in targets[y]:
            for e, ce in alg.pair(x, c):
                add(e, column_of[(y, c)], -HALF * ce)

        unseen = {e for c in missing[x] for e, _ in alg.pair(c, y)}
        unseen.update(e for c in missing[y] for e, _ in alg.pair(x, c))
        for e in sorted(eqs, key=BasisIndex.sort_key):
            if not eqs[e]:
                continue
            if e not in codomain_set or e in unseen:
                dropped += 1
                continue
            rows.append(eqs[e])

    # 4. Exact nullspace
    vectors = nullspace(rows, len(columns))
    space = SolutionSpace(alg, d, w_in, w_out, columns, rows, vectors, used, skipped, dropped)
    space.verify()
    logger.info("Half-derivation window solved", extra={"algebra": alg.name, **space.summary()})
    return space


def solve_all_shifts(alg: AlgebraDef, shifts: Sequence[Scalarish], w_in: Window, out_pad: int = 0) -> List[SolutionSpace]:
    """One solve per grade shift; the full space is their direct sum."""
    return [solve_half_derivations(alg, d, w_in, output_window(alg, w_in, d, out_pad)) for d in shifts]


@dataclass
class InteriorClassification:
    core: Window
    interior_dimension: int
    fitted: List[ShiftMap]
    residual_flags: List[bool]

    @property
    def ok(self) -> bool:
        return not any(self.residual_flags)

    def as_dict(self) -> Dict:
        return {
            "core": self.core.as_dict(),
            "interior_dimension": self.interior_dimension,
            "fitted": [m.as_records() for m in self.fitted],
            "residual_flags": list(self.residual_flags),
        }


def default_core(space: SolutionSpace) -> Window:
    """Shrink W_in by the largest observed |i shift| plus one, clamped to half the i range."""
    w_in = space.w_in
    amount = min(space.max_abs_i_shift() + 1, (w_in.i_max - w_in.i_min) // 2)
    if amount <= 0:
        raise WindowError("Input window too small for an interior core", details={"w_in": w_in.as_dict()})
    return w_in.shrink(amount)


def classify_interior(space: SolutionSpace, core: Optional[Window] = None) -> InteriorClassification:
    """Fit constant-coefficient shift maps to the solutions on a core window.

    Raises:
        WindowError: if the core is not strictly inside W_in.
    """
    core = core or default_core(space)
    if not space.w_in.strictly_contains(core):
        raise WindowError(
            "Core window must lie strictly inside the input window",
            details={"core": core.as_dict(), "w_in": space.w_in.as_dict()},
        )
    alg = space.algebra
    core_basis = alg.enumerate_basis(core)
    core_set = set(core_basis)
    first_of_family: Dict[str, BasisIndex] = {}
    for b in core_basis:
        first_of_family.setdefault(b.family, b)

    restricted: List[Row] = []
    fits: List[Dict[ShiftKey, GaussianRational]] = []
    flags: List[bool] = []
    for vec in space.vectors:
        # 1. Restrict to the core
        raw: Row = {col: c for col, c in vec.items() if space.columns[col][0] in core_set}
        restricted.append(raw)

        # 2. Fit one coefficient per shift key from the first core element of the source family
        observed: Dict[ShiftKey, Dict[BasisIndex, GaussianRational]] = {}
        for col, coeff in raw.items():
            b, c = space.columns[col]
            key = (b.family, c.family, c.alpha - b.alpha, c.i - b.i)
            observed.setdefault(key, {})[b] = coeff
        fit = {key: values.get(first_of_family[key[0]], ZERO) for key, values in observed.items()}
        fits.append({k: v for k, v in fit.items() if v})

        # 3. Residual against the fitted shift map on the core
        shift_map = ShiftMap.from_coefficients(fits[-1])
        actual: Dict[BasisIndex, Dict[BasisIndex, GaussianRational]] = {}
        for col, coeff in raw.items():
            b, c = space.columns[col]
            actual.setdefault(b, {})[c] = coeff
        flags.append(any(shift_map.apply_basis(b).to_dict() != actual.get(b, {}) for b in core_basis))

    keys = sorted({k for fit in fits for k in fit}, key=shift_key_order)
    key_col = {k: n for n, k in enumerate(keys)}
    fitted_rows = rref([{key_col[k]: v for k, v in fit.items()} for fit in fits])
    fitted = [
        ShiftMap(ShiftTerm(keys[col][0], keys[col][1], keys[col][2], keys[col][3], coeff) for col, coeff in row.items())
        for row in fitted_rows
    ]

    result = InteriorClassification(core, rank(restricted), fitted, flags)
    logger.info(
        "Interior classification finished",
        extra={
            "algebra": alg.name,
            "grade_shift": render_scalar(space.grade_shift),
            "interior_dimension": result.interior_dimension,
            "fitted": len(fitted),
            "residuals": sum(flags),
        },
    )
    return result
