"""Random generators and independent oracles shared by the test modules."""

import random
from fractions import Fraction as F

from defectlab.cuts import Cut, LexGrid, Side, cut_add, grid_oracle, idempotency_checks
from defectlab.ogroup import GroupDesc, GroupElement


def random_cut(rng: random.Random, desc: GroupDesc, denom: int = 4, span: int = 3) -> Cut:
    ent = tuple(F(rng.randint(-span * denom, span * denom), denom) for _ in range(desc.rank))
    return Cut.make(GroupElement(desc, ent), rng.randint(0, desc.rank), rng.choice(list(Side)))


def idempotency_disagreements(seed: int, count: int) -> list:
    """Cuts over divisible groups on which the equivalent idempotency tests disagree."""
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        desc = GroupDesc(rng.choice([2, 3, 5]), ("Q",) * rng.randint(1, 3))
        c = random_cut(rng, desc)
        n = desc.p
        g = c.shift
        sample = [g, g.scale(F(1, n)), g.scale(F(n - 1, n)), g.scale(2)]
        sample += [random_cut(rng, desc).shift for _ in range(20)]
        checks = idempotency_checks(c, n, sample)
        if len({checks[k] for k in ("a", "d", "f", "h", "k")}) != 1:
            bad.append((str(c), checks))
    return bad


_ORACLE_GROUPS = [GroupDesc.of(2, "Q"), GroupDesc.of(3, "Z", "Q"), GroupDesc.of(2, "Q", "Q"), GroupDesc.of(2, "Z")]


def _raw_cut(rng, desc):
    ent = tuple(F(rng.randint(-2, 2)) if k.value == "Z" else F(rng.randint(-4, 4), 2) for k in desc.coords)
    return GroupElement(desc, ent), rng.randint(0, desc.rank), rng.choice(list(Side))


def grid_oracle_disagreements(seed: int, count: int) -> list:
    """Random cut pairs where the closed-form sum differs from the extensional one on the window."""
    rng = random.Random(seed)
    grids = {}
    for desc in _ORACLE_GROUPS:
        coarse = [1 if k.value == "Z" else 2 for k in desc.coords]
        fine = [1 if k.value == "Z" else 16 for k in desc.coords]
        window = LexGrid.uniform(desc, 5, coarse)
        grids[desc] = ([window[i] for i in range(len(window))], LexGrid.uniform(desc, 12, fine))
    bad = []
    for _ in range(count):
        desc = rng.choice(_ORACLE_GROUPS)
        sample, witnesses = grids[desc]
        r1, r2 = _raw_cut(rng, desc), _raw_cut(rng, desc)
        total = cut_add(Cut.make(*r1), Cut.make(*r2))
        expected = frozenset(z for z in sample if total.contains_left(z))
        if grid_oracle(r1, r2, sample, witnesses) != expected:
            bad.append((r1, r2, str(total)))
    return bad


def random_series(rng: random.Random, ring):
    exps = {F(rng.randint(-12, 12), rng.choice([1, 2, 3, 4, 9])) for _ in range(rng.randint(1, 5))}
    return ring.series([(e, rng.randint(1, ring.p - 1)) for e in exps])


def root_value_closed_form(a) -> F:
    q = a.terms[0][0].entries[0]
    return q / a.ring.p if q <= 0 else q


def random_perfect_element(rng: random.Random, field):
    p = field.p
    terms = []
    for _ in range(rng.randint(1, 4)):
        e = F(rng.randint(-3 * p * p, 3 * p * p), rng.choice([1, p, p * p]))
        terms.append((e, rng.randint(1, p - 1)))
    return field.ring.series(terms)
