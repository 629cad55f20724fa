"""
Report and request schemas.

ReportDocument is the single output format of the CLI and the payload shape
of the HTTP API. Scalars are always rendered canonically as strings, basis
elements as family/alpha/i records.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from tpsbench.app.domain.algebra.basis import BasisIndex, Element, Window
from tpsbench.app.domain.algebra.jacobi import JacobiReport
from tpsbench.app.domain.exactnum import GaussianRational, render_scalar
from tpsbench.app.domain.halfderiv.checker import HalfDerivationReport
from tpsbench.app.domain.halfderiv.maps import ShiftMap
from tpsbench.app.domain.halfderiv.solver import InteriorClassification, SolutionSpace
from tpsbench.app.domain.tps.checks import PropertyCheck, TpsReport, Witness
from tpsbench.app.domain.tps.solver import TpsSolution


# Record serializers

def basis_record(b: BasisIndex, coeff: Optional[GaussianRational] = None) -> Dict[str, Any]:
    record = {"family": b.family, "alpha": render_scalar(b.alpha), "i": b.i}
    if coeff is not None:
        record["coefficient"] = render_scalar(coeff)
    return record


def element_records(elem: Element) -> List[Dict[str, Any]]:
    return [basis_record(b, c) for b, c in elem.terms]


def witness_record(witness: Optional[Witness]) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    return {
        "tuple": [basis_record(b) for b in witness.tuple],
        "residual": element_records(witness.residual),
    }


def jacobi_payload(report: JacobiReport, limit: int) -> Dict[str, Any]:
    return {
        "ok": report.ok,
        "triples_checked": report.triples_checked,
        "violations_total": len(report.violations),
        "violations": [
            {"triple": [basis_record(b) for b in v.triple], "residual": element_records(v.residual)}
            for v in report.violations[:limit]
        ],
    }


def halfderiv_check_payload(report: HalfDerivationReport, limit: int) -> Dict[str, Any]:
    return {
        "ok": report.ok,
        "pairs_checked": report.pairs_checked,
        "pairs_skipped": report.pairs_skipped,
        "violations_total": len(report.residuals),
        "violations": [
            {"pair": [basis_record(b) for b in r.pair], "residual": element_records(r.residual)}
            for r in report.residuals[:limit]
        ],
    }


def shift_map_payload(shift_map: ShiftMap) -> List[Dict[str, Any]]:
    return shift_map.as_records()


def solution_payload(space: SolutionSpace, interior: InteriorClassification) -> Dict[str, Any]:
    payload = space.summary()
    payload["interior"] = interior.as_dict()
    return payload


def property_payload(check: PropertyCheck) -> Dict[str, Any]:
    return {
        "ok": check.ok,
        "tuples_checked": check.tuples_checked,
        "tuples_skipped": check.tuples_skipped,
        "violations_total": check.violations,
        "witness": witness_record(check.witness),
    }


def tps_payload(report: TpsReport) -> Dict[str, Any]:
    payload = {c.name: property_payload(c) for c in report.checks()}
    payload["transposed_poisson"] = report.is_tps
    return payload


def tps_solution_payload(solution: TpsSolution) -> Dict[str, Any]:
    w = solution.mutation_element()
    return {
        "name": solution.product.name,
        "trivial": solution.trivial,
        "mutation_element": element_records(w) if w is not None else None,
        "coefficients": [
            {"basis": basis_record(x), "generator": k, "value": render_scalar(c)}
            for (x, k), c in sorted(solution.coefficients.items(), key=lambda item: (item[0][0].sort_key(), item[0][1]))
        ],
        "checks": tps_payload(solution.report),
    }


# Report document

class AlgebraIdentity(BaseModel):
    """Everything needed to rebuild the algebra of a report."""
    name: str
    source: str
    parameters: Dict[str, str] = Field(default_factory=dict)
    generators: List[str] = Field(default_factory=list)


class WindowModel(BaseModel):
    i_min: int
    i_max: int
    alpha_coeff_bound: int = 0

    def to_window(self) -> Window:
        return Window(self.i_min, self.i_max, self.alpha_coeff_bound)


class ReportDocument(BaseModel):
    tool_version: str
    verb: str
    algebra: Optional[AlgebraIdentity] = None
    window: Optional[WindowModel] = None
    inputs: Dict[str, Any] = Field(default_factory=dict)
    result: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = True


# HTTP requests

class AlgebraSelector(BaseModel):
    """Catalog algebra by name and parameters, or a `.liealg` source text."""
    name: Optional[str] = None
    params: Dict[str, str] = Field(default_factory=dict)
    generators: List[str] = Field(default_factory=list)
    source: Optional[str] = None


class BracketRequest(BaseModel):
    algebra: AlgebraSelector
    x: str
    y: str


class WindowRequest(BaseModel):
    algebra: AlgebraSelector
    window: WindowModel


class HalfDerivationSolveRequest(BaseModel):
    algebra: AlgebraSelector
    window: WindowModel
    shift: str = "0"
    out_pad: int = Field(default=0, ge=0)


class TpsCheckRequest(BaseModel):
    algebra: AlgebraSelector
    window: WindowModel
    product: str = "plain-W"
    w: Optional[str] = None


class AlgebraCatalogEntry(BaseModel):
    name: str
    required_params: List[str]


class AlgebraCatalogResponse(BaseModel):
    algebras: List[AlgebraCatalogEntry]
