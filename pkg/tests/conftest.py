import numpy as np
from hypothesis import strategies as st


@st.composite
def permutations(draw, min_degree=1, max_degree=12, degree=None):
    from fix3.perm import Permutation

    n = degree if degree is not None else draw(st.integers(min_degree, max_degree))
    return Permutation(draw(st.permutations(range(n))))


def brute_closure(gens, n):
    """Group generated by ``gens`` as a set of image tuples, by plain BFS."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(int(v) for v in g.images) for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = tuple(s[x[i]] for i in range(n))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def as_tuples(E):
    return {tuple(int(v) for v in row) for row in np.asarray(E)}


# number of subgroups of Sym(n), not up to conjugacy
SUBGROUP_COUNTS = {4: 30, 5: 156}


def canonical_oracle_failures(n):
    """Compare canonical coset representatives with a listing of each coset,
    over every subgroup of Sym(n).  Returns a list of failure descriptions."""
    from fix3.constructors import sym
    from fix3.cosets import canonical_rows
    from fix3.perm import PermGroup
    from fix3.small import CayleyGroup

    C = CayleyGroup(sym(n))
    subs = C.subgroups()
    failures = []
    if len(subs) != SUBGROUP_COUNTS[n]:
        failures.append(f"found {len(subs)} subgroups of Sym({n}), expected {SUBGROUP_COUNTS[n]}")
    E = C.elements
    for mask, gens in subs.values():
        H = C.as_group(gens) if gens else PermGroup([], n)
        EH = E[mask]
        base = list(H.chain.base)
        canon = canonical_rows(H.chain, E)
        for i, g in enumerate(E):
            coset = g[EH]  # row r is h_r * g
            keys = [tuple(row[base].tolist()) for row in coset]
            expected = coset[min(range(len(keys)), key=keys.__getitem__)]
            if not np.array_equal(canon[i], expected):
                failures.append(f"|H|={int(mask.sum())}, g={g.tolist()}")
        codes = canon @ (n ** np.arange(n))
        if np.unique(codes).size != C.order // int(mask.sum()):
            failures.append(f"|H|={int(mask.sum())}: representatives do not separate cosets")
    return failures


# one line per acceptance criterion, printed in the terminal summary
CRITERIA: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, text = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
