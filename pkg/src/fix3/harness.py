"""The classification table: one case per row of the classification of groups
satisfying the hypothesis, plus negative controls, each run at a fixed tier and
reported as JSON."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from . import __version__
from .constructors import ExampleCase
from .cosets import coset_action, stab_tree
from .errors import (
    CertificateRefused,
    ConstructionError,
    EnumerationBoundError,
    GeometryError,
)
from .hypothesis import (
    FixedPointSpectrum,
    HypothesisVerdict,
    burnside_audit,
    center_audit,
    check_exhaustive,
    check_tree,
    fixed_point_formula,
    normalizer_fixed_point_audit,
    structural_certificate,
    sylow_audit,
    verdict_from_certificate,
)
from .perm import PermGroup, enumeration_bound
from .recipes import RecipeError, build_case, build_group
from .small import CayleyGroup

TIERS = ("exhaustive", "tree", "structural", "conditional", "out-of-scope")

# errors that mean "this case could not be run", as opposed to a false verdict
CASE_ERRORS = (ConstructionError, EnumerationBoundError, CertificateRefused, GeometryError, RecipeError)


@dataclass(frozen=True)
class CaseSpec:
    """One row of the table.

    ``subgroup`` is a subgroup recipe, ``None`` for the recipe's default, or ``all`` for a negative control that
    runs every transitive coset action of the group.  ``row`` names the
    classification row the case stands for.  ``allowed_fix`` lists the fixed
    point counts a nontrivial element may have, when the row states them.
    """

    id: str
    recipe: str
    subgroup: str | None
    tier: str
    expected_degree: int | None
    expected_stab_order: int | None
    row: str
    expected_satisfied: bool = True
    allowed_fix: tuple[int, ...] | None = None


def _c(id, recipe, subgroup, tier, degree, stab, row, **kw) -> CaseSpec:
    return CaseSpec(id, recipe, subgroup, tier, degree, stab, row, **kw)


CASES: tuple[CaseSpec, ...] = (
    # simple groups, noncyclic stabilizer
    _c("a5-syl2", "alt:5", "syl:2", "exhaustive", 15, 4, "simple: A5, degree 15, stabilizer a Sylow 2-subgroup"),
    _c("a6-natural", "alt:6", "point", "exhaustive", 6, 60, "simple: A6, degree 6, stabilizer A5"),
    _c("a6-15", "alt:6", "order:24", "exhaustive", 15, 24, "simple: A6, degree 15, stabilizer Sym4"),
    _c("psl2-7-deg7", "psl3:2", "point", "exhaustive", 7, 24, "simple: PSL2(7), degree 7, stabilizer Sym4"),
    _c("a7-15", "alt:7", "order:168", "exhaustive", 15, 168, "simple: A7, degree 15, stabilizer PSL2(7)"),
    _c("psl2-11-deg11", "psl2:11", "order:60", "exhaustive", 11, 60, "simple: PSL2(11), degree 11, stabilizer A5"),
    _c("m11-11", "m11", "point", "exhaustive", 11, 720, "simple: M11, degree 11"),
    # simple groups, cyclic stabilizer
    _c("psl3-2-singer", "psl3:2", "singer", "exhaustive", 24, 7, "simple: PSL3(q), q=2 (PSL2(7) on 24 points)"),
    _c("psl3-3-singer", "psl3:3", "singer", "exhaustive", 432, 13, "simple: PSL3(q), q=3"),
    _c("psl3-4-singer", "psl3:4", "singer", "exhaustive", 2880, 7, "simple: PSL3(q), q=4"),
    _c("psl3-5-singer", "psl3:5", "singer", "tree", 12000, 31, "simple: PSL3(q), q=5"),
    _c("psl3-large", "psl3:q", "singer", "out-of-scope", None, None, "simple: PSL3(q), q>5"),
    _c("psu3-3-torus", "psu3:3", "torus", "exhaustive", 864, 7, "simple: PSU3(q), q=3"),
    _c("psu3-4-torus", "psu3:4", "torus", "exhaustive", 4800, 13, "simple: PSU3(q), q=4"),
    _c("psu3-5-torus", "psu3:5", "torus", "tree", 18000, 7, "simple: PSU3(q), q=5"),
    _c("psu3-large", "psu3:q", "torus", "out-of-scope", None, None, "simple: PSU3(q), q>5"),
    _c("psl4-3-c13", "psl4:3", "torus", "structural", 466560, 13, "simple: PSL4(3), stabilizer of order 13"),
    _c("psu4-3-c7", "psu4:3", "torus", "structural", 466560, 7, "simple: PSU4(3), stabilizer of order 7"),
    _c("psl4-5-c31", "psl4:5", "torus", "conditional", 234000000, 31, "simple: PSL4(5), stabilizer of order 31"),
    _c("a7-360", "alt:7", "syl:7", "exhaustive", 360, 7, "simple: A7, degree 360"),
    _c("a8-2880", "alt:8", "syl:7", "tree", 2880, 7, "simple: A8, degree 2880"),
    _c("m22-63360", "m22", "cyclic:7", "tree", 63360, 7, "simple: M22, stabilizer of order 7"),
    # almost simple, not simple
    _c("s5-natural", "sym:5", "point", "exhaustive", 5, 24, "almost simple: Aut(PSL2(2^p)), p=2 (Sym5 on 5 points)"),
    _c("pgaml2-8", "pgaml2:8", "point", "exhaustive", 9, 168, "almost simple: Aut(PSL2(2^p)), p=3"),
    _c("pgaml2-large", "pgaml2:q", "point", "out-of-scope", None, None, "almost simple: Aut(PSL2(2^p)), p>3"),
    _c("pgl3-4-singer", "pgl3:4", "singer", "exhaustive", 2880, 21, "almost simple: PGL3(q), q=4"),
    _c("pgl3-large", "pgl3:q", "singer", "out-of-scope", None, None, "almost simple: PGL3(q), q>4"),
    _c("pgu3-3-torus", "pgu3:3", "torus", "exhaustive", 864, 7, "almost simple: PGU3(q), q=3 (equal to PSU3(3))"),
    _c("pgu3-5-torus", "pgu3:5", "torus", "tree", 18000, 21, "almost simple: PGU3(q), q=5"),
    _c("pgu3-large", "pgu3:q", "torus", "out-of-scope", None, None, "almost simple: PGU3(q), q>5"),
    # general example families
    _c("maxclass3-wreath33", "maxclass3:wreath33", "case", "exhaustive", 27, 3, "3-group of maximal class: Z3 wr Z3",
       allowed_fix=(0, 3)),
    _c("maxclass3-extraspecial27", "maxclass3:extraspecial27", "case", "exhaustive", 9, 3,
       "3-group of maximal class: extraspecial 27", allowed_fix=(0, 3)),
    _c("field3p-2", "field3p:2", "case", "exhaustive", 9, 16, "field example: AGammaL(1, 3^2)", allowed_fix=(0, 1, 3)),
    _c("field3p-3", "field3p:3", "case", "exhaustive", 27, 78, "field example: AGammaL(1, 3^3)", allowed_fix=(0, 1, 3)),
    _c("z3xfrob-5", "z3xfrob:5", "case", "exhaustive", 15, 4, "Z3 x Frobenius: AGL(1,5)", allowed_fix=(0, 3)),
    _c("z3xfrob-7", "z3xfrob:7", "case", "exhaustive", 21, 6, "Z3 x Frobenius: AGL(1,7)", allowed_fix=(0, 3)),
    _c("twisted-2-2", "twisted:2,2", "case", "exhaustive", 192, 63, "twisted Frobenius: field of order 2^6"),
    _c("fukushima-z3x2^3", "fukushima", "case", "exhaustive", 24, 7, "semidirect product H:<alpha>, H = Z3 x 2^3"),
    # negative controls
    _c("s4-all", "sym:4", "all", "exhaustive", None, None, "negative: every action of Sym4", expected_satisfied=False),
    _c("a4-all", "alt:4", "all", "exhaustive", None, None, "negative: every action of A4", expected_satisfied=False),
    _c("a6-45", "alt:6", "syl:2", "exhaustive", 45, 8, "negative: A6 on the cosets of a Sylow 2-subgroup",
       expected_satisfied=False),
    _c("psl2-8-borel", "psl2:8", "point", "exhaustive", 9, 56, "negative: PSL2(8) on the cosets of a Borel subgroup",
       expected_satisfied=False),
)


def case_by_id(case_id: str) -> CaseSpec:
    for c in CASES:
        if c.id == case_id:
            return c
    raise KeyError(case_id)


@dataclass
class Report:
    """Outcome of one case.  ``status`` is ``ok``, ``mismatch``, ``error`` or
    ``skipped`` (out-of-scope rows)."""

    case: str
    verdict: str
    tier: str
    max_fix: int | None = None
    degree: int | None = None
    stab_order: int | None = None
    spectrum: dict[str, int] | None = None
    audits: dict[str, dict] = field(default_factory=dict)
    conditional: bool = False
    seed: int | None = None
    millis: int = 0
    version: str = __version__
    expected: str = "satisfied"
    status: str = "ok"
    group_order: int | None = None
    violation: str | None = None
    error: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in known})

    @classmethod
    def from_json(cls, text: str | bytes) -> "Report":
        return cls.from_dict(json.loads(text))

    def deterministic_dict(self) -> dict:
        d = self.to_dict()
        d.pop("millis")
        return d


def _verdict_word(satisfied: bool) -> str:
    return "satisfied" if satisfied else "not satisfied"


def _spectrum_json(s: FixedPointSpectrum) -> dict[str, int]:
    return {str(k): v for k, v in s.as_dict().items()}


def _apply_verdict(rep: Report, v: HypothesisVerdict) -> None:
    rep.verdict = _verdict_word(v.satisfied)
    rep.max_fix = v.max_fix_nontrivial
    rep.degree = v.degree
    rep.group_order = v.group_order
    rep.violation = v.violation
    rep.conditional = v.conditional


def _action_group(case: ExampleCase):
    """The permutation group of the action and a function giving the fixed
    points of an element of ``case.group`` in it."""
    G, H = case.group, case.subgroup
    if case.natural:
        return G, (lambda x: x.fixed_points()), None
    action = coset_action(G, H)
    return action.group, (lambda x: action.image(x).fixed_points()), action


def _run_exhaustive(spec: CaseSpec, case: ExampleCase, rep: Report) -> None:
    A, fixed_points, _ = _action_group(case)
    verdict, spectrum = check_exhaustive(A, parent_order=case.group.order())
    _apply_verdict(rep, verdict)
    rep.spectrum = _spectrum_json(spectrum)
    audits = [burnside_audit(spectrum, A.order())]
    if verdict.satisfied:
        audits.append(normalizer_fixed_point_audit(case.group, case.subgroup, fixed_points))
        audits.append(center_audit(case.group))
        audits.append(sylow_audit(case.group.order(), case.subgroup.order()))
    if spec.allowed_fix is not None:
        got = sorted(spectrum.nonzero_nontrivial(A.degree) | ({0} if spectrum.counts.get(0) else set()))
        ok = set(got) <= set(spec.allowed_fix)
        rep.audits["fixed_point_set"] = {"passed": ok, "counts": got, "allowed": list(spec.allowed_fix)}
    for a in audits:
        rep.audits[a.name] = a.as_dict()


def _run_tree(spec: CaseSpec, case: ExampleCase, rep: Report) -> None:
    A, fixed_points, _ = _action_group(case)
    verdict = check_tree(A, parent_order=case.group.order(), tree=stab_tree(A))
    _apply_verdict(rep, verdict)
    if verdict.satisfied:
        for a in (center_audit(case.group), sylow_audit(case.group.order(), case.subgroup.order())):
            rep.audits[a.name] = a.as_dict()
        gens = case.subgroup.generators
        if not case.natural and len(gens) == 1 and case.group.order() <= enumeration_bound():
            x = gens[0]
            formula = fixed_point_formula(case.group, case.subgroup, x)
            direct = len(fixed_points(x))
            rep.audits["fixed_point_formula"] = {"passed": formula["fixed"] == direct == 3,
                                                 "direct": direct, **formula}


def _run_certificate(spec: CaseSpec, case: ExampleCase, rep: Report) -> None:
    G, H = case.group, case.subgroup
    if spec.tier == "structural":
        cert = structural_certificate(G, H, "bruteforce")
    else:
        cert = structural_certificate(G, H, "assumed", assumed_centralizer=case.assumed_centralizer,
                                      normalizing_element=case.normalizing_element)
    v = verdict_from_certificate(cert, G.order())
    _apply_verdict(rep, v)
    rep.audits["certificate"] = {"passed": cert.implies_hypothesis(), **cert.as_dict()}
    a = sylow_audit(G.order(), H.order())
    rep.audits[a.name] = a.as_dict()
    if G.order() <= enumeration_bound():
        a = center_audit(G)
        rep.audits[a.name] = a.as_dict()


def _run_all_actions(spec: CaseSpec, rep: Report) -> None:
    """Every transitive coset action of a small group, one per subgroup class."""
    G = build_group(spec.recipe)
    C = CayleyGroup(G)
    results = []
    any_sat = False
    for mask, gens in C.subgroup_classes():
        H = C.as_group(gens) if gens else PermGroup([], G.degree)
        action = coset_action(G, H)
        verdict, _ = check_exhaustive(action.group, parent_order=G.order())
        any_sat |= verdict.satisfied
        results.append({"stab_order": H.order(), "degree": action.degree, "max_fix": verdict.max_fix_nontrivial,
                        "satisfied": verdict.satisfied, "violation": verdict.violation})
    rep.verdict = _verdict_word(any_sat)
    rep.group_order = G.order()
    rep.max_fix = max(r["max_fix"] for r in results)
    rep.audits["actions"] = {"passed": True, "count": len(results), "results": results}


def run_case(spec: CaseSpec | str) -> Report:
    if isinstance(spec, str):
        spec = case_by_id(spec)
    rep = Report(spec.id, "not run", spec.tier, expected=_verdict_word(spec.expected_satisfied))
    if spec.tier == "out-of-scope":
        rep.status = "skipped"
        rep.notes.append(f"{spec.row}: beyond desk scale, not reproduced")
        return rep
    t0 = time.perf_counter()
    try:
        if spec.subgroup == "all":
            _run_all_actions(spec, rep)
        else:
            case = build_case(spec.recipe, spec.subgroup)
            rep.seed = case.seed
            rep.stab_order = case.subgroup.order()
            rep.notes.extend(case.notes)
            if spec.tier == "exhaustive":
                _run_exhaustive(spec, case, rep)
            elif spec.tier == "tree":
                _run_tree(spec, case, rep)
            elif spec.tier in ("structural", "conditional"):
                _run_certificate(spec, case, rep)
            else:
                raise ValueError(f"unknown tier {spec.tier!r}")
    except CASE_ERRORS as exc:
        rep.verdict = "error"
        rep.status = "error"
        rep.error = f"{type(exc).__name__}: {exc}"
    rep.millis = int(round((time.perf_counter() - t0) * 1000))
    # audit details hold integer keys in places; store their JSON form
    rep.audits = json.loads(json.dumps(rep.audits))
    if rep.status != "error":
        rep.status = _status(spec, rep)
    return rep


def _status(spec: CaseSpec, rep: Report) -> str:
    if rep.verdict != rep.expected:
        return "mismatch"
    if spec.expected_degree is not None and rep.degree != spec.expected_degree:
        rep.notes.append(f"degree {rep.degree} != expected {spec.expected_degree}")
        return "mismatch"
    if spec.expected_stab_order is not None and rep.stab_order != spec.expected_stab_order:
        rep.notes.append(f"stabilizer order {rep.stab_order} != expected {spec.expected_stab_order}")
        return "mismatch"
    if any(not a.get("passed", True) for a in rep.audits.values()):
        return "mismatch"
    return "ok"


def select(filter: str | None = None) -> list[CaseSpec]:
    return [c for c in CASES if not filter or filter in c.id]


def run_all(filter: str | None = None, workers: int = 1) -> list[Report]:
    """Run the matching cases, in table order regardless of completion order."""
    specs = select(filter)
    if workers <= 1 or len(specs) <= 1:
        return [run_case(s) for s in specs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_case, [s.id for s in specs]))


def exit_code(reports: list[Report], allow_conditional: bool = False) -> int:
    """0 when every counted case is as expected, 2 on any case error, else 1.

    Conditional reports only count when ``allow_conditional`` is set.
    """
    counted = [r for r in reports if r.status != "skipped" and (allow_conditional or not r.conditional)]
    if any(r.status == "error" for r in counted):
        return 2
    if any(r.status != "ok" for r in counted):
        return 1
    return 0


__all__ = ["CASES", "CaseSpec", "Report", "run_case", "run_all", "exit_code", "case_by_id", "select"]
