"""The ``name[:param[,param]]`` recipe grammar for groups and subgroups.

Group recipes: ``sym:n``, ``alt:n``, ``agl1:q``, ``agaml1:q``, ``psl2:q``,
``psl3:q``, ``pgl3:q``, ``psl4:q``, ``psu3:q``, ``pgu3:q``, ``psu4:q``,
``pgaml2:q``, ``m11``, ``m22``, and the example families ``maxclass3:kind``,
``field3p:p``, ``z3xfrob:q``, ``twisted:p,r``, ``fukushima``.

Subgroup recipes: ``point`` (stabilizer of point 0), ``case`` (the designated
subgroup of an example family or Singer/torus row), ``singer``, ``torus``,
``syl:p``, ``order:k`` (seeded search), ``cyclic:k`` (seeded search for an
element of order ``k``).
"""

from __future__ import annotations

from . import constructors as C
from .constructors import ExampleCase, GroupRecipe
from .perm import PermGroup, Subgroup, pointwise_stabilizer, sylow_subgroup


class RecipeError(ValueError):
    pass


def parse_recipe(text: str) -> GroupRecipe:
    text = text.strip()
    if not text:
        raise RecipeError("empty recipe")
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    params: list = []
    if rest:
        for tok in rest.split(","):
            tok = tok.strip()
            if not tok:
                raise RecipeError(f"empty parameter in {text!r}")
            params.append(int(tok) if tok.lstrip("-").isdigit() else tok)
    return GroupRecipe(name, tuple(params))


def _one_int(r: GroupRecipe) -> int:
    if len(r.params) != 1 or not isinstance(r.params[0], int):
        raise RecipeError(f"{r.name} takes one integer parameter")
    return r.params[0]


_GROUPS = {
    "sym": lambda r: C.sym(_one_int(r)),
    "alt": lambda r: C.alt(_one_int(r)),
    "agl1": lambda r: C.agl1(_one_int(r)),
    "agaml1": lambda r: C.agaml1(_one_int(r)),
    "psl2": lambda r: C.psl(2, _one_int(r)),
    "psl3": lambda r: C.psl(3, _one_int(r)),
    "pgl3": lambda r: C.pgl(3, _one_int(r)),
    "psl4": lambda r: C.psl(4, _one_int(r)),
    "psu3": lambda r: C.psu(3, _one_int(r)),
    "pgu3": lambda r: C.pgu(3, _one_int(r)),
    "psu4": lambda r: C.psu(4, _one_int(r)),
    "pgaml2": lambda r: C.pgaml2(_one_int(r)),
    "m11": lambda r: C.mathieu11(),
    "m22": lambda r: C.mathieu22(),
}


def family_case(r: GroupRecipe) -> ExampleCase | None:
    """The example case a recipe names directly, if any."""
    if r.name == "maxclass3":
        kind = r.params[0] if r.params else "wreath33"
        return C.maxclass3(str(kind))
    if r.name == "field3p":
        return C.field3p(_one_int(r))
    if r.name == "z3xfrob":
        return C.z3xfrob_agl1(_one_int(r))
    if r.name == "twisted":
        if len(r.params) != 2:
            raise RecipeError("twisted takes two parameters p,r")
        return C.twisted(int(r.params[0]), int(r.params[1]))
    if r.name == "fukushima":
        return C.fukushima_default()
    return None


def build_group(r: GroupRecipe | str) -> PermGroup:
    if isinstance(r, str):
        r = parse_recipe(r)
    case = family_case(r)
    if case is not None:
        return case.group
    if r.name not in _GROUPS:
        raise RecipeError(f"unknown group recipe {r.name!r}")
    return _GROUPS[r.name](r)


def _designated_case(r: GroupRecipe, kind: str) -> ExampleCase:
    q = _one_int(r)
    table = {
        ("psl3", "singer"): C.singer_psl3,
        ("pgl3", "singer"): C.singer_pgl3,
        ("psu3", "torus"): C.torus_psu3,
        ("pgu3", "torus"): C.torus_pgu3,
        ("psl4", "torus"): C.psl4_case,
        ("psu4", "torus"): C.psu4_case,
    }
    fn = table.get((r.name, kind))
    if fn is None:
        raise RecipeError(f"{r.name} has no {kind} subgroup recipe")
    return fn(q)


def build_case(group: GroupRecipe | str, subgroup: str | None = None) -> ExampleCase:
    """Resolve a group recipe and optional subgroup recipe to a case."""
    r = parse_recipe(group) if isinstance(group, str) else group
    label = str(r) if subgroup is None else f"{r}/{subgroup}"
    fam = family_case(r)
    if subgroup is None or subgroup == "case":
        if fam is not None:
            return fam
        if subgroup == "case":
            kind = "singer" if r.name in ("psl3", "pgl3") else "torus"
            return _designated_case(r, kind)
        subgroup = "point"
    sr = parse_recipe(subgroup)
    G = fam.group if fam is not None else build_group(r)
    seed = C.recipe_seed(label)
    natural = False
    if sr.name == "point":
        H = pointwise_stabilizer(G, [0])
        natural = True
    elif sr.name in ("singer", "torus"):
        return _designated_case(r, sr.name)
    elif sr.name == "syl":
        H = sylow_subgroup(G, _one_int(sr))
    elif sr.name == "order":
        H = C.find_subgroup_of_order(G, _one_int(sr), seed)
    elif sr.name == "cyclic":
        H = C.cyclic(G, C.find_element_of_order(G, _one_int(sr), seed))
    else:
        raise RecipeError(f"unknown subgroup recipe {sr.name!r}")
    h = H.order()
    return ExampleCase(label, r, G, H, G.order() // h, h, natural=natural,
                       seed=None if sr.name in ("point", "syl") else seed).validate()


def subgroup_of(G: PermGroup, text: str) -> Subgroup:
    sr = parse_recipe(text)
    seed = C.recipe_seed(f"{text}")
    if sr.name == "point":
        return pointwise_stabilizer(G, [0])
    if sr.name == "syl":
        return sylow_subgroup(G, _one_int(sr))
    if sr.name == "order":
        return C.find_subgroup_of_order(G, _one_int(sr), seed)
    if sr.name == "cyclic":
        return C.cyclic(G, C.find_element_of_order(G, _one_int(sr), seed))
    raise RecipeError(f"unknown subgroup recipe {sr.name!r}")
