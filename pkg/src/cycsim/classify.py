"""The complete similarity decision engine for cyclic 2-groups C(2^r).

Free characters of C(2^r) with weight 1 mod 4 are exactly the powers 5^j,
so the reduced free lattice is coordinatized by 5-power exponents.  The
standard basis elements are

    a(s, i) = t^(5^i) - t^(5^(2^(r-s-2) + i)),  1 <= s <= r-2,
                                                0 <= i < 2^(r-s-2),

with alpha_s the class of a(s, 0) and beta_s the class of a(s, 1).  The
stable-similarity sublattice is generated by the three families

    A(r): 2*alpha_1 and 2*(alpha_1 + beta_1)     (A(3) = {4*alpha_1}),
    B(r): iterated inductions of 2*alpha_1 and alpha_1 + beta_1 from
          proper subgroups,
    C(r): the differences a(s, i) - a(s, i+2),

and membership, quotient presentations, weight sets, parity and depth are
all exact integer lattice computations from that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import CapacityExceeded, DomainError, InternalInvariantError, NotInRtilde
from . import snf
from .reps import (
    R_MINUS,
    R_PLUS,
    WEIGHT,
    VirtualRep,
    cyclic_group,
    induce,
    isotropy_index,
    restrict,
)


def _require_two_group(g):
    if g.odd_part != 1 or g.two_exponent < 3:
        raise DomainError(f"unsupported group {g!r}: need C(2^r) with r >= 3")
    return g.two_exponent


@lru_cache(maxsize=None)
def five_power_table(r):
    """weight 5^j mod 2^r -> j, for j = 0..2^(r-2)-1."""
    n = 1 << r
    table = {}
    acc = 1
    for j in range(1 << (r - 2)):
        table[acc] = j
        acc = acc * 5 % n
    return table


def basis_element(r, s, i):
    """The virtual representation a(s, i) over C(2^r)."""
    if not (1 <= s <= r - 2):
        raise DomainError("need 1 <= s <= r-2")
    if not (0 <= i < (1 << (r - s - 2))):
        raise DomainError("index i out of range")
    n = 1 << r
    return VirtualRep.from_weights(
        cyclic_group(n),
        weights=[pow(5, i, n)],
        weights_neg=[pow(5, (1 << (r - s - 2)) + i, n)],
    )


def alpha(r, s):
    return basis_element(r, s, 0)


def beta(r, s):
    return basis_element(r, s, 1)


@dataclass(frozen=True)
class StdBasis:
    """Ordered standard basis of the reduced free lattice of C(2^r)."""

    r: int
    elements: tuple  # tuple of (s, i)

    @property
    def rank(self):
        return len(self.elements)

    def index(self, s, i):
        return self.elements.index((s, i))

    def virtual(self, idx):
        s, i = self.elements[idx]
        return basis_element(self.r, s, i)


@dataclass(frozen=True)
class BasisCoords:
    r: int
    coords: tuple


@lru_cache(maxsize=None)
def std_basis(r):
    if r < 3:
        raise DomainError("need r >= 3")
    elements = []
    for s in range(1, r - 1):
        for i in range(1 << (r - s - 2)):
            elements.append((s, i))
    basis = StdBasis(r, tuple(elements))
    if basis.rank != (1 << (r - 2)) - 1:
        raise InternalInvariantError("standard basis has the wrong rank")
    if not _basis_unimodular(basis):
        raise InternalInvariantError("standard basis is not unimodular")
    return basis


def _exponent_vector(x):
    """Free dimension-zero element -> multiplicity vector over 5-power slots."""
    r = _require_two_group(x.group)
    table = five_power_table(r)
    vec = [0] * (1 << (r - 2))
    n = x.group.order
    for irr, m in x.mult.items():
        if irr.kind != WEIGHT or gcd(irr.weight, n) != 1:
            raise NotInRtilde("element is not a free virtual representation")
        vec[table[irr.weight]] += m
    if sum(vec) != 0:
        raise NotInRtilde("element does not have dimension zero")
    return vec


def _basis_columns(r):
    cols = []
    for s in range(1, r - 1):
        for i in range(1 << (r - s - 2)):
            vec = [0] * (1 << (r - 2))
            vec[i] += 1
            vec[(1 << (r - s - 2)) + i] -= 1
            cols.append(vec)
    return cols


def _basis_unimodular(basis):
    cols = _basis_columns(basis.r)
    mat = [[cols[j][row] for j in range(len(cols))] for row in range(len(cols[0]))]
    factors = snf.invariant_factors(mat)
    return len(factors) == basis.rank and all(f == 1 for f in factors)


def to_coords(x):
    """Coordinates of x in the standard basis; NotInRtilde when x is not a
    dimension-zero free virtual element (integral solution always exists
    for those, by unimodularity)."""
    r = _require_two_group(x.group)
    basis = std_basis(r)
    vec = _exponent_vector(x)
    cols = _basis_columns(r)
    mat = [[cols[j][row] for j in range(len(cols))] for row in range(len(vec))]
    sol = snf.solve_integer(mat, vec)
    if sol is None:
        raise NotInRtilde("no integral coordinates in the standard basis")
    return BasisCoords(r, tuple(sol))


def from_coords(coords):
    r = coords.r
    basis = std_basis(r)
    x = VirtualRep.zero(cyclic_group(1 << r))
    for c, (s, i) in zip(coords.coords, basis.elements):
        if c:
            x = x + c * basis_element(r, s, i)
    return x


# ----------------------------------------------------------------------
# the stable-similarity lattice


@dataclass(frozen=True)
class RtGenerator:
    tag: str        # "A" | "B" | "C"
    coords: tuple   # in std_basis order
    # A: which = 0 for 2*alpha_1 (4*alpha_1 when r = 3), 1 for 2(alpha_1+beta_1)
    # B: k = induction steps, which = 0 for Ind 2*alpha_1, 1 for Ind(alpha_1+beta_1)
    # C: (s, i) of gamma
    which: int = 0
    k: int = 0
    s: int = 0
    i: int = 0
    source_exponent: int = 0  # r - k for B generators

    def label(self):
        if self.tag == "A":
            return "2*alpha_1" if self.which == 0 else "2*(alpha_1+beta_1)"
        if self.tag == "B":
            chi = "2*alpha_1" if self.which == 0 else "alpha_1+beta_1"
            return f"Ind_{self.k}({chi}({self.source_exponent}))"
        return f"gamma_{self.s}^({self.i})"


@dataclass(frozen=True)
class RtLattice:
    r: int
    generators: tuple  # of RtGenerator


def _coords_of(x):
    return list(to_coords(x).coords)


def _hat_b_elements(rk):
    """The induction seeds over C(2^rk): list of (which, VirtualRep)."""
    if rk == 3:
        return [(0, 2 * alpha(3, 1))]
    return [(0, 2 * alpha(rk, 1)), (1, alpha(rk, 1) + beta(rk, 1))]


def _closed_form_induction(x_coords_rk, rk):
    """Lemma-style closed form for one induction step of a basis element:
    Ind(a_(s-1)(r-1)^(i)) = 2 a_s(r)^(i) - a_1(r)^(i) + a_1(r)^(X+i),
    X = 2^(r-s-2); extended linearly.  Input and output are coordinate
    vectors over std_basis(rk) and std_basis(rk+1)."""
    r = rk + 1
    out = [0] * std_basis(r).rank
    src = std_basis(rk)
    dst = std_basis(r)
    for c, (s_old, i) in zip(x_coords_rk, src.elements):
        if not c:
            continue
        s = s_old + 1
        x_half = 1 << (r - s - 2)
        out[dst.index(s, i)] += 2 * c
        out[dst.index(1, i)] -= c
        out[dst.index(1, x_half + i)] += c
    return out


@lru_cache(maxsize=None)
def rt_lattice(r):
    """Generators of the stable-similarity sublattice, in standard coords.

    The B family is computed by the generic induction operation and
    cross-checked against the closed-form induction formula; a mismatch is
    an internal error.
    """
    if r < 3:
        raise DomainError("need r >= 3")
    gens = []
    if r == 3:
        gens.append(RtGenerator("A", tuple(_coords_of(4 * alpha(3, 1))), which=0))
        return _validated_lattice(RtLattice(3, tuple(gens)))
    gens.append(RtGenerator("A", tuple(_coords_of(2 * alpha(r, 1))), which=0))
    gens.append(
        RtGenerator("A", tuple(_coords_of(2 * (alpha(r, 1) + beta(r, 1)))), which=1)
    )
    for k in range(1, r - 2):
        rk = r - k
        for which, seed in _hat_b_elements(rk):
            lifted = seed
            for _ in range(k):
                lifted = induce(lifted, 2 * lifted.group.order)
            coords = _coords_of(lifted)
            # cross-check against the closed form, one induction at a time
            check = _coords_of(seed)
            for step in range(k):
                check = _closed_form_induction(check, rk + step)
            if check != coords:
                raise InternalInvariantError(
                    "generic induction disagrees with the closed form"
                )
            gens.append(
                RtGenerator(
                    "B", tuple(coords), which=which, k=k, source_exponent=rk
                )
            )
    for s in range(1, r - 3):
        for i in range((1 << (r - s - 2)) - 2):
            g = basis_element(r, s, i) - basis_element(r, s, i + 2)
            gens.append(RtGenerator("C", tuple(_coords_of(g)), s=s, i=i))
    return _validated_lattice(RtLattice(r, tuple(gens)))


def _validated_lattice(lattice):
    rank = std_basis(lattice.r).rank
    if len(lattice.generators) != rank:
        raise InternalInvariantError("stable lattice has the wrong rank")
    mat = _generator_matrix(lattice)
    factors = snf.invariant_factors(mat)
    if len(factors) != rank or any(f == 0 for f in factors):
        raise InternalInvariantError("stable lattice generators are dependent")
    return lattice


def _generator_matrix(lattice):
    """Columns are the generators in standard coordinates."""
    gens = lattice.generators
    rank = len(gens[0].coords)
    return [[g.coords[row] for g in gens] for row in range(rank)]


def in_rt(x):
    """Integer coefficients of x over the lattice generators, or None."""
    if isinstance(x, BasisCoords):
        coords = list(x.coords)
        r = x.r
    else:
        r = _require_two_group(x.group)
        coords = list(to_coords(x).coords)
    lattice = rt_lattice(r)
    sol = snf.solve_integer(_generator_matrix(lattice), coords)
    return None if sol is None else tuple(sol)


# ----------------------------------------------------------------------
# weights, parity, depth


def theta(x_or_r, coefficients=None):
    """Ascending set of isotropy indices required by the element.

    Accepts either a virtual element (coefficients resolved internally) or
    (r, coefficients) for a known decomposition."""
    r, coeffs = _resolve_coefficients(x_or_r, coefficients)
    lattice = rt_lattice(r)
    out = set()
    for c, gen in zip(coeffs, lattice.generators):
        if c == 0:
            continue
        if gen.tag == "A":
            out.add(1)
        elif gen.tag == "C":
            out.update(range(1, gen.s + 1))
        else:
            if gen.which == 0 and gen.source_exponent >= 4:
                out.add(gen.k + 1)
            else:
                out.update({gen.k, gen.k + 1})
    return tuple(sorted(out))


def _resolve_coefficients(x_or_r, coefficients):
    if coefficients is not None and isinstance(x_or_r, int):
        return x_or_r, list(coefficients)
    x = x_or_r
    r = _require_two_group(x.group)
    sol = in_rt(x)
    if sol is None:
        raise NotInRtilde("element is not in the stable-similarity lattice")
    return r, list(sol)


EVEN = "Even"
ODD = "Odd"


def parity_and_depth(x_or_r, coefficients=None):
    """(parity, mixed, depth) following the even/odd definition literally:
    parity is Even iff the coefficients of 2*alpha_1(r) and of every C-family
    generator are even; mixed/depth look at Ind(2*alpha_1) constituents with
    source exponent >= 4."""
    r, coeffs = _resolve_coefficients(x_or_r, coefficients)
    lattice = rt_lattice(r)
    even = True
    for c, gen in zip(coeffs, lattice.generators):
        if c % 2 == 0:
            continue
        if gen.tag == "C":
            even = False
        elif gen.tag == "A" and gen.which == 0 and r >= 4:
            # the generator 2*alpha_1(r); the r = 3 generator 4*alpha_1 is
            # outside the literal even-forcing list
            even = False
    if not even:
        return ODD, False, None
    depth = None
    for c, gen in zip(coeffs, lattice.generators):
        if (
            c % 2 != 0
            and gen.tag == "B"
            and gen.which == 0
            and gen.source_exponent >= 4
        ):
            depth = gen.k if depth is None else min(depth, gen.k)
    return EVEN, depth is not None, depth


# ----------------------------------------------------------------------
# W-summand bookkeeping and the decision procedure


@dataclass(frozen=True)
class WSummary:
    """Multiplicities of W-summands by isotropy index, free summands removed."""

    r: int
    counts: tuple  # tuple of (index, count)

    @classmethod
    def of(cls, w):
        r = _require_two_group(w.group)
        counts = {}
        for irr, m in sorted(w.mult.items()):
            if m < 0:
                raise DomainError("W must be an honest representation")
            idx = isotropy_index(irr, w.group)
            if idx == r:
                continue  # free summands are absorbed into V1, V2
            counts[idx] = counts.get(idx, 0) + m
        return cls(r, tuple(sorted(counts.items())))

    def has_index(self, idx):
        return any(i == idx and c > 0 for i, c in self.counts)

    def has_index_at_most(self, bound):
        return any(i <= bound and c > 0 for i, c in self.counts)


YES = "Yes"
NO = "No"
NOT_IN_RT = "NotInRt"


@dataclass
class SimilarityVerdict:
    decision: str
    rt_coefficients: tuple | None = None
    theta: tuple = ()
    parity: str = EVEN
    mixed: bool = False
    depth: int | None = None
    missing: tuple = ()

    def to_json(self):
        return {
            "decision": self.decision,
            "theta": list(self.theta),
            "parity": self.parity,
            "depth": self.depth,
            "missing": list(self.missing),
            "rt_coefficients": (
                None if self.rt_coefficients is None else list(self.rt_coefficients)
            ),
        }


def decide_similarity(v1, v2, w):
    """Decide V1 + W ~ V2 + W over C(2^r) via the weight-set conditions.

    V1, V2 must be free honest representations of equal dimension; W is an
    arbitrary representation of the same group.
    """
    g = v1.group
    _require_two_group(g)
    if v2.group != g or w.group != g:
        raise DomainError("all representations must share one group")
    for v in (v1, v2):
        if not v.is_representation() or not v.is_free():
            raise DomainError("V1 and V2 must be free representations")
    if not w.is_representation():
        raise DomainError("W must be an honest representation")
    if v1.dim != v2.dim:
        raise DomainError("V1 and V2 must have equal dimension")
    x = v1 - v2
    if not x:
        return SimilarityVerdict(YES, rt_coefficients=())
    coeffs = in_rt(x)
    if coeffs is None:
        return SimilarityVerdict(NOT_IN_RT)
    r = g.two_exponent
    th = theta(r, coeffs)
    parity, mixed, depth = parity_and_depth(r, coeffs)
    summary = WSummary.of(w)
    missing = []
    for k in th:
        if not summary.has_index(k):
            missing.append(f"W_{k}")
    if mixed and not summary.has_index_at_most(depth):
        missing.append(f"W_t (t <= {depth})")
    if parity == ODD and not summary.has_index(0):
        missing.append("R_plus")
    decision = YES if not missing else NO
    return SimilarityVerdict(
        decision,
        rt_coefficients=coeffs,
        theta=th,
        parity=parity,
        mixed=mixed,
        depth=depth,
        missing=tuple(missing),
    )


def canonical_w_for(x):
    """The smallest W that realizes a stable element: one W_k per weight
    index, an R+ for odd parity (which also covers the mixed condition);
    None when x is not stable."""
    r = _require_two_group(x.group)
    coeffs = in_rt(x)
    if coeffs is None:
        return None
    g = cyclic_group(1 << r)
    w = VirtualRep.zero(g)
    if not x:
        return w
    th = theta(r, coeffs)
    parity, mixed, depth = parity_and_depth(r, coeffs)
    for k in th:
        if k == 1:
            w = w.add_irreducible(R_MINUS, 1)
        else:
            w = w.add_weight(1 << (r - k), 1)
    if parity == ODD:
        w = w.add_irreducible(R_PLUS, 1)
    elif mixed and not any(k <= depth for k in th):
        # an R+ is a W_0, and 0 <= depth always
        w = w.add_irreducible(R_PLUS, 1)
    return w


def decide_stable(v1, v2):
    """Stable similarity: exists W with V1 + W ~ V2 + W.

    Returns (bool, coefficients-or-None); cross-checked by handing the
    canonical W back to the unstable decision.
    """
    g = v1.group
    _require_two_group(g)
    if v2.group != g:
        raise DomainError("representations live over different groups")
    for v in (v1, v2):
        if not v.is_representation() or not v.is_free():
            raise DomainError("V1 and V2 must be free representations")
    if v1.dim != v2.dim:
        raise DomainError("V1 and V2 must have equal dimension")
    x = v1 - v2
    if not x:
        return True, ()
    coeffs = in_rt(x)
    if coeffs is None:
        return False, None
    w = canonical_w_for(x)
    verdict = decide_similarity(v1, v2, w)
    if verdict.decision != YES:
        raise InternalInvariantError(
            "stable certificate not realized by the canonical W"
        )
    return True, coeffs


# ----------------------------------------------------------------------
# the quotient group of stable classes


@dataclass
class RTopPresentation:
    r: int
    invariant_factors: list
    named_orders: dict   # generator label -> order in the quotient

    def to_json(self):
        return {
            "r": self.r,
            "invariant_factors": list(self.invariant_factors),
            "named_orders": dict(self.named_orders),
        }


def rtop_presentation(r):
    """Quotient of the reduced free lattice by the stable sublattice:
    invariant factors and orders of the named classes."""
    lattice = rt_lattice(r)
    mat = _generator_matrix(lattice)
    rows = [[mat[i][j] for i in range(len(mat))] for j in range(len(lattice.generators))]
    factors = [f for f in snf.invariant_factors(rows) if f != 1]
    named = {}
    for s in range(1, r - 1):
        named[f"alpha_{s}"] = order_in_rtop(alpha(r, s))
    if r >= 4:
        named["beta_1"] = order_in_rtop(beta(r, 1))
    for j in range(1, r - 3):
        named[f"psi_{j}"] = order_in_rtop(alpha(r, j + 1) + beta(r, j + 1))
    return RTopPresentation(r, factors, named)


def order_in_rtop(x):
    """Least m >= 1 with m*x in the stable lattice; 0 if no multiple is
    (cannot happen for dimension-zero free elements)."""
    r = _require_two_group(x.group)
    if not x:
        return 1
    lattice = rt_lattice(r)
    mat = _generator_matrix(lattice)
    rows = [[g.coords[i] for i in range(len(g.coords))] for g in lattice.generators]
    factors = [f for f in snf.invariant_factors(rows) if f != 1]
    exponent = 1
    for f in factors:
        exponent = exponent * f // gcd(exponent, f)
    coords = list(to_coords(x).coords)
    divisors = sorted(
        {d for d in range(1, exponent + 1) if exponent % d == 0}
    )
    for m in divisors:
        if snf.solve_integer(mat, [m * c for c in coords]) is not None:
            return m
    return 0


# ----------------------------------------------------------------------
# enumeration of unstable similarities


def enumerate_unstable(r, dim_complex, w, max_enum=200_000):
    """Verdicts for all unordered pairs of non-isomorphic free reps of the
    given complex dimension over C(2^r)."""
    import itertools

    if r < 3:
        raise DomainError("need r >= 3")
    if dim_complex > 3 or r > 6:
        raise DomainError("enumeration range is dim_complex <= 3, r <= 6")
    n = 1 << r
    slots = 1 << (r - 2)
    weights = [pow(5, j, n) for j in range(slots)]
    reps = []
    for combo in itertools.combinations_with_replacement(weights, dim_complex):
        reps.append(VirtualRep.from_weights(cyclic_group(n), weights=combo))
    total = len(reps) * (len(reps) - 1) // 2
    if total > max_enum:
        raise CapacityExceeded(f"{total} pairs exceed the enumeration bound")
    out = []
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            out.append((reps[a], reps[b], decide_similarity(reps[a], reps[b], w)))
    return out


# ----------------------------------------------------------------------
# parity vs torsion cross-check


@dataclass
class ParityTorsionReport:
    parity: str
    outcome: str      # "witness_found" | "class_nonzero" | "search_exhausted"
                      # | "inconclusive" | "trivial"
    details: dict = field(default_factory=dict)

    @property
    def conclusive(self):
        return self.outcome in ("witness_found", "class_nonzero", "trivial")

    def to_json(self):
        return {
            "parity": self.parity,
            "outcome": self.outcome,
            "details": {k: repr(v) for k, v in self.details.items()},
        }


def parity_torsion_crosscheck(x, exp_bound=2):
    """One-directional executable check of 'even iff torsion class vanishes'
    for elements restricting to zero on the index-2 subgroup.

    Even: exhibit tau = trivial * w * bar(w)^-1 (modulo units induced from
    the subgroup) by bounded search over the generating units.  Odd: verify
    the class is non-zero in the unit-subgroup module.  Inconclusive
    outcomes are reported as such.
    """
    from .groupring import Involution, NON_ORIENTED, u_one
    from .tate import tate, unit_subgroup_module

    r = _require_two_group(x.group)
    n = 1 << r
    if not x:
        return ParityTorsionReport(EVEN, "trivial")
    if restrict(x, n // 2):
        raise DomainError("x must restrict to zero on the index-2 subgroup")
    coeffs = in_rt(x)
    if coeffs is None:
        raise NotInRtilde("x is not in the stable-similarity lattice")
    parity, _mixed, _depth = parity_and_depth(r, coeffs)

    tau = _torsion_of(x)
    bar = Involution(NON_ORIENTED)
    family = [u_one(n, j) for j in range(1, n // 2, 4)]
    if parity == EVEN:
        witness = _even_witness(tau, family, bar, exp_bound)
        if witness is None:
            return ParityTorsionReport(EVEN, "search_exhausted")
        return ParityTorsionReport(EVEN, "witness_found", {"w_exponents": witness})
    module = unit_subgroup_module(
        family, involution=bar, modulo_trivial=True, modulo_induced=True,
        exp_bound=exp_bound + 2,
    )
    expo = _express_in_family(tau, family, exp_bound + 2)
    if expo is None:
        return ParityTorsionReport(ODD, "inconclusive", {"reason": "tau not expressed"})
    group = tate(module.module, 1)
    cls = group.class_map(list(expo) + [0] * (module.module.n_gens - len(expo)))
    if any(cls):
        return ParityTorsionReport(ODD, "class_nonzero", {"class": cls, "exponents": expo})
    return ParityTorsionReport(
        ODD, "inconclusive", {"reason": "class vanished in the generated module"}
    )


def _torsion_of(x):
    from .groupring import quotient_from_weight_lists

    n = x.group.order
    pos = x.weight_list(1)
    neg = x.weight_list(-1)
    return quotient_from_weight_lists(n, pos, neg)


def _support_uniform(poly):
    return poly.support_parity() is not None


def _even_witness(tau, family, bar, bound):
    import itertools

    n = tau.n
    k = len(family)
    bars = [u.twist(bar) for u in family]
    for combo in itertools.product(range(-bound, bound + 1), repeat=k):
        w_val = None
        p = tau.value
        for u, ub, e in zip(family, bars, combo):
            if e > 0:
                p = p * (ub.value**e) * (u.inverse**e)
            elif e < 0:
                p = p * (ub.inverse ** (-e)) * (u.value ** (-e))
        # p = tau * bar(w) * w^-1 for w = prod u^e ; trivial-or-induced?
        if _support_uniform(p):
            return combo
    return None


def _express_in_family(tau, family, bound):
    import itertools

    k = len(family)
    for combo in itertools.product(range(-bound, bound + 1), repeat=k):
        p = tau.value
        for u, e in zip(family, combo):
            if e > 0:
                p = p * u.inverse**e
            elif e < 0:
                p = p * u.value ** (-e)
        if _support_uniform(p):
            return combo
    return None
