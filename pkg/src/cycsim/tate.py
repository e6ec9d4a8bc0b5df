"""Tate cohomology of Z/2 acting on finitely presented abelian groups.

A C2Module is Z^n modulo an integer relation lattice, together with an
integer matrix T that descends to the quotient and squares to the identity
there.  H^0 is fixed-points modulo norms, H^1 is anti-fixed points modulo
differences; both are elementary abelian 2-groups.

The module also hosts two consumers of this machinery: presentations of
multiplicative unit subgroups of a group ring (with the involution acting),
and an experimental enumeration check of a norm-map kernel statement used
by the vanishing lemma for cyclic 2-groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CapacityExceeded, DomainError, InternalInvariantError
from . import snf
from .groupring import GroupRingElem, Involution, NON_ORIENTED


def _mat_is_zero(m):
    return all(all(c == 0 for c in row) for row in m)


class C2Module:
    """Z^n / <relations> with an order-2 action T."""

    __slots__ = ("n_gens", "relations", "involution", "meta")

    def __init__(self, n_gens, relations, involution, meta=None):
        relations = [list(r) for r in relations]
        involution = [list(r) for r in involution]
        if any(len(r) != n_gens for r in relations):
            raise DomainError("relation rows must have length n_gens")
        if len(involution) != n_gens or any(len(r) != n_gens for r in involution):
            raise DomainError("involution must be n_gens x n_gens")
        self.n_gens = n_gens
        self.relations = relations
        self.involution = involution
        self.meta = dict(meta or {})
        self._validate()

    def _validate(self):
        # T maps the relation lattice into itself
        for rel in self.relations:
            img = snf.mat_vec(self.involution, rel)
            if not self._in_lattice(img):
                raise DomainError("involution does not preserve the relations")
        # T^2 = identity modulo the relation lattice
        t2 = snf.mat_mul(self.involution, self.involution)
        for j in range(self.n_gens):
            col = [t2[i][j] - (1 if i == j else 0) for i in range(self.n_gens)]
            if any(col) and not self._in_lattice(col):
                raise DomainError("involution does not square to the identity")

    def _in_lattice(self, vec):
        if not any(vec):
            return True
        if not self.relations:
            return False
        mat = [[self.relations[k][i] for k in range(len(self.relations))]
               for i in range(self.n_gens)]
        return snf.solve_integer(mat, vec) is not None

    def quotient_order(self):
        """Order of the underlying abelian group, or None when infinite."""
        factors = snf.invariant_factors(self.relations) if self.relations else []
        rank = self.n_gens - len(factors)
        if rank > 0:
            return None
        out = 1
        for f in factors:
            out *= f
        return out

    def to_json(self):
        return {
            "gens": self.n_gens,
            "relations": [list(r) for r in self.relations],
            "involution": [list(r) for r in self.involution],
        }

    @classmethod
    def from_json(cls, rec):
        return cls(rec["gens"], rec.get("relations", []), rec["involution"])


@dataclass
class TateGroup:
    """An elementary abelian 2-group with a class map from module vectors."""

    invariant_factors: list
    class_map: object = field(repr=False, default=None)
    incomplete: bool = False

    @property
    def rank(self):
        return len(self.invariant_factors)

    def order(self):
        return 1 << self.rank

    def is_trivial_class(self, vec):
        return not any(self.class_map(vec))

    def __eq__(self, other):
        return (
            isinstance(other, TateGroup)
            and self.invariant_factors == other.invariant_factors
        )


def _tate_masks(i):
    # H^0: ker(T - 1)/im(T + 1);  H^1: ker(T + 1)/im(T - 1)
    if i % 2 == 0:
        return -1, +1
    return +1, -1


def tate(module, i):
    """H^i(Z/2; module) via Smith normal form of stacked integer matrices."""
    n = module.n_gens
    t = module.involution
    ker_sign, im_sign = _tate_masks(i)
    # kernel condition: (T + ker_sign) x = 0 modulo relations
    a = [[t[r][c] + (ker_sign if r == c else 0) for c in range(n)] for r in range(n)]
    rel_cols = [list(r) for r in module.relations]
    # x in ker <=> exists y with a x = rels^T y; kernel of [a | -rels^T]
    stacked = [a[r] + [-rel_cols[k][r] for k in range(len(rel_cols))] for r in range(n)]
    null = snf.kernel_basis(stacked)
    projected = [v[:n] for v in null]
    # the x-projection of the nullspace basis generates but need not be a
    # basis; reduce to one so the quotient presentation below is faithful
    if projected:
        h, _, pivots = snf.hermite_row(projected)
        kernel_gens = [h[i] for i in range(len(pivots))]
    else:
        kernel_gens = []
    # image lattice: columns of (T + im_sign) plus the relations
    b = [[t[r][c] + (im_sign if r == c else 0) for c in range(n)] for r in range(n)]
    image_gens = [[b[r][c] for r in range(n)] for c in range(n)]
    image_gens += [list(r) for r in module.relations]
    # express image generators in the kernel basis: solve K alpha = g
    if kernel_gens:
        kmat = [[kernel_gens[j][r] for j in range(len(kernel_gens))] for r in range(n)]
        rel_in_k = []
        for g in image_gens:
            alpha = snf.solve_integer(kmat, g)
            if alpha is None:
                # g is not in the kernel lattice: can only happen for the
                # relation rows when kernel_gens misses torsion directions;
                # the stacked kernel always contains the relations, so treat
                # as an internal inconsistency.
                raise DomainError("image generator escapes the kernel lattice")
            rel_in_k.append(alpha)
        factors, coord = snf.abelian_quotient(rel_in_k, len(kernel_gens))
    else:
        kmat = None
        factors, coord = [], (lambda x: [])
    if any(f == 0 or f > 2 for f in factors):
        raise DomainError("Tate group is not elementary 2-torsion")

    def class_map(vec, _kmat=kmat, _coord=coord):
        if _kmat is None:
            if any(vec):
                raise DomainError("vector is not in the kernel of the action")
            return []
        alpha = snf.solve_integer(_kmat, list(vec))
        if alpha is None:
            raise DomainError("vector is not in the kernel of the action")
        return [c % 2 for c in _coord(alpha)]

    return TateGroup(list(factors), class_map)


def tate_bruteforce(module, i, max_size=1 << 20):
    """Set-theoretic oracle for tate() on finite modules: enumerate all
    elements, compute kernel and image literally and count cosets."""
    order = module.quotient_order()
    if order is None or order > max_size:
        raise CapacityExceeded("module is infinite or too large to enumerate")
    n = module.n_gens
    factors, coord, section = snf.abelian_quotient_with_section(module.relations, n)
    if any(f == 0 for f in factors):
        raise CapacityExceeded("module is infinite")

    def canon(vec):
        return tuple(coord(vec))

    elements = [
        section(list(combo)) for combo in itertools.product(*[range(f) for f in factors])
    ]
    ker_sign, im_sign = _tate_masks(i)
    tmat = module.involution

    def act(vec, sign):
        img = snf.mat_vec(tmat, vec)
        return [img[k] + sign * vec[k] for k in range(n)]

    zero = canon([0] * n)
    kernel = [v for v in elements if canon(act(v, ker_sign)) == zero]
    image_keys = {canon(act(v, im_sign)) for v in elements}
    image_vs = [section([c % f for c, f in zip(key, factors)]) for key in image_keys]
    covered = set()
    cosets = 0
    for v in kernel:
        if canon(v) in covered:
            continue
        cosets += 1
        for w in image_vs:
            covered.add(canon([v[k] + w[k] for k in range(n)]))
    rank = cosets.bit_length() - 1
    if 1 << rank != cosets:
        raise DomainError("brute-force Tate group is not elementary abelian")
    return TateGroup([2] * rank, None)


# ----------------------------------------------------------------------
# unit subgroups as C2-modules


@dataclass
class UnitSubgroupModule:
    """Presentation of a multiplicative subgroup of torsion units.

    generators: list of TorsionUnit; module: the abstract C2Module; the
    relation search is bounded, so completeness of the relation lattice is
    only guaranteed up to the recorded exponent bound.
    """

    generators: list
    module: C2Module
    exponent_bound: int
    complete_under_bound: bool
    modulo_trivial: bool
    modulo_induced: bool

    def class_of(self, exponents, i=1):
        group = tate(self.module, i)
        return group.class_map(list(exponents))


def _is_trivial_product(poly, modulo_trivial, modulo_induced):
    if modulo_induced:
        # +-t^m times an even-supported unit <=> uniform support parity
        return poly.support_parity() is not None
    if modulo_trivial:
        return poly.is_monomial_unit() is not None
    return poly == GroupRingElem.one(poly.n)


def unit_subgroup_module(
    units,
    involution=Involution(NON_ORIENTED),
    modulo_trivial=True,
    modulo_induced=False,
    exp_bound=8,
    max_products=2_000_000,
):
    """Present the subgroup generated by the units as a C2Module.

    The involution acts by u -> bar(u).  When the involute of a generator is
    not itself expressible (modulo the chosen trivial subgroup) in the
    generators, the generator list is extended by the involutes so the
    action closes up.  Relations are found by bounded exponent search;
    completeness beyond the bound is unknowable here and is recorded, never
    silently assumed.
    """
    if not units:
        mod = C2Module(0, [], [])
        return UnitSubgroupModule([], mod, exp_bound, True, modulo_trivial, modulo_induced)
    n = units[0].n
    for u in units:
        if u.n != n:
            raise DomainError("units live in different group rings")
    bars = [u.twist(involution) for u in units]

    # Closure of the action: bar(u) * u trivial means bar(u) = u^-1 in the
    # quotient; otherwise the involute joins the generator list.
    expressed = []
    extra = []
    for idx, (u, ub) in enumerate(zip(units, bars)):
        if _is_trivial_product(ub.value * u.value, modulo_trivial, modulo_induced):
            vec = [0] * len(units)
            vec[idx] = -1
            expressed.append(vec)
        else:
            expressed.append(None)
            extra.append((idx, ub))
    gens = list(units) + [ub for _, ub in extra]
    k = len(gens)
    columns = []
    pos = {idx: len(units) + slot for slot, (idx, _ub) in enumerate(extra)}
    for idx in range(len(units)):
        col = [0] * k
        if expressed[idx] is not None:
            col[idx] = -1
        else:
            col[pos[idx]] = 1
        columns.append(col)
    for idx, _ub in extra:
        col = [0] * k
        col[idx] = 1
        columns.append(col)
    tmat = [[columns[j][i] for j in range(k)] for i in range(k)]

    relations = _relation_search(
        gens, exp_bound, modulo_trivial, modulo_induced, max_products
    )
    module = C2Module(k, relations, tmat, meta={"N": n})
    return UnitSubgroupModule(
        gens, module, exp_bound, True, modulo_trivial, modulo_induced
    )


def _signed_combos(k, total, bound):
    """All integer vectors of length k with sum of |entries| = total and
    each |entry| <= bound."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for head in range(-min(bound, total), min(bound, total) + 1):
        for rest in _signed_combos(k - 1, total - abs(head), bound):
            yield (head,) + rest


def _find_eval_prime(n):
    # smallest prime p = 1 mod n, for evaluation at n-th roots of unity
    p = n + 1
    while True:
        if p % n == 1 and all(p % q for q in range(2, int(p**0.5) + 1)):
            return p
        p += n


def _root_of_unity(p, n):
    # element of exact order n in GF(p)^*
    prime_divs = [q for q in range(2, n + 1) if n % q == 0 and all(q % d for d in range(2, q))]
    for g in range(2, p):
        cand = pow(g, (p - 1) // n, p)
        if cand == 1:
            continue
        if all(pow(cand, n // q, p) != 1 for q in prime_divs):
            return cand
    raise InternalInvariantError("no primitive root found")


def _eval_vector(poly, root, p):
    n = poly.n
    return tuple(
        sum(c * pow(root, (j * e) % n, p) for e, c in enumerate(poly.coeffs) if c) % p
        for j in range(n)
    )


def _relation_search(gens, bound, modulo_trivial, modulo_induced, max_products):
    """Exponent vectors e with prod gens^e trivial, |e_i| <= bound.

    Candidates are pre-filtered by evaluating each unit at all N-th roots of
    unity over a small prime field; hits are verified exactly over Z.
    Returns a generating set (rows) of the relation lattice found.
    """
    n = gens[0].n
    k = len(gens)
    count = (2 * bound + 1) ** k
    if count > max_products:
        raise CapacityExceeded(f"relation search space {count} exceeds {max_products}")
    p = _find_eval_prime(n)
    root = _root_of_unity(p, n)
    # power tables: table[i][e + bound] = evaluation vector of gens[i]^e
    tables = []
    for g in gens:
        base = _eval_vector(g.value, root, p)
        base_inv = _eval_vector(g.inverse, root, p)
        corr = [pow(v * w % p, -1, p) for v, w in zip(base, base_inv)]
        # g.value * g.inverse = +-t^m, so base*base_inv*corr = 1 pointwise
        row = {}
        for e in range(0, bound + 1):
            row[e] = tuple(pow(v, e, p) for v in base)
        for e in range(1, bound + 1):
            row[-e] = tuple(
                pow(v, e, p) * pow(c, e, p) % p for v, c in zip(base_inv, corr)
            )
        tables.append(row)
    # trivial targets: vectors of +-root^(j*m); with modulo_induced also any
    # vector with v_{j+n/2} = +- v_j uniformly (checked structurally below)
    trivial_targets = set()
    for m in range(n):
        for sign in (1, p - 1):
            trivial_targets.add(
                tuple(sign * pow(root, (j * m) % n, p) % p for j in range(n))
            )

    def candidate(vec):
        prod = [1] * n
        for i, e in enumerate(vec):
            if e:
                tab = tables[i][e]
                prod = [a * b % p for a, b in zip(prod, tab)]
        prod = tuple(prod)
        if modulo_induced and n % 2 == 0:
            half = n // 2
            ratios = set()
            for j in range(half):
                if prod[j] == 0:
                    return True  # degenerate evaluation; verify exactly
                ratios.add(prod[j + half] * pow(prod[j], -1, p) % p)
            return len(ratios) == 1 and ratios.issubset({1, p - 1})
        if modulo_trivial:
            return prod in trivial_targets
        return prod == tuple([1] * n)

    found = []

    def reduces(vec):
        if not found:
            return False
        mat = [[row[i] for row in found] for i in range(k)]
        return snf.solve_integer(mat, list(vec)) is not None

    def verify(vec):
        poly = GroupRingElem.one(n)
        for g, e in zip(gens, vec):
            if e > 0:
                poly = poly * g.value ** e
            elif e < 0:
                poly = poly * g.inverse ** (-e)
        return _is_trivial_product(poly, modulo_trivial, modulo_induced)

    for total in range(1, k * bound + 1):
        for combo in _signed_combos(k, total, bound):
            # skip sign-mirror duplicates
            lead = next((e for e in combo if e), 0)
            if lead < 0:
                continue
            if not candidate(combo):
                continue
            if reduces(combo):
                continue
            if verify(combo):
                found.append(list(combo))
    return found


# ----------------------------------------------------------------------
# the norm-map kernel enumeration


@dataclass
class OliverReport:
    n: int
    norm_relation_ok: bool
    kernel_implication_ok: bool
    checked: int
    failures: list = field(default_factory=list)
    interpretation_mismatch: bool = False

    @property
    def passed(self):
        return self.norm_relation_ok and self.kernel_implication_ok

    def to_json(self):
        return {
            "n": self.n,
            "norm_relation_ok": self.norm_relation_ok,
            "kernel_implication_ok": self.kernel_implication_ok,
            "checked": self.checked,
            "failures": self.failures[:16],
            "interpretation_mismatch": self.interpretation_mismatch,
        }


def _default_norm_table(a, b):
    """gamma_a^b: the norm element of ker(Gamma_b -> Gamma_a) in Z[Gamma_b],
    with Gamma_k cyclic of order 2^k; as a coefficient list of length 2^b."""
    if b < a:
        raise DomainError("norm table needs b >= a")
    size = 1 << b
    out = [0] * size
    step = 1 << a
    for j in range(0, size, step):
        out[j] += 1
    return out


def _ring_transport(coeffs, target_k):
    """Send an element of Z[Gamma_j] to Z[Gamma_target] generator-to-generator
    (exponents reduced mod 2^target_k)."""
    size = 1 << target_k
    out = [0] * size
    for j, c in enumerate(coeffs):
        if c:
            out[j % size] += c
    return out


def _ring_mul(a, b, k, mod):
    size = 1 << k
    out = [0] * size
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % size] = (out[(i + j) % size] + x * y) % mod
    return out


def _psi(x_components, n_level, norm_table, mod):
    """psi_n applied to x in M^n: component i of x contributes
    2^(i-j) * gamma_{i-j}^{n-j} * x_i to component n-j for 0 <= j <= i."""
    n = n_level
    out = [[0] * (1 << m) for m in range(n + 1)]
    for i, xi in enumerate(x_components):
        if not any(xi):
            continue
        for j in range(0, i + 1):
            target = n - j
            coeff = norm_table(i - j, target)
            moved = _ring_transport(xi, target)
            term = _ring_mul(moved, coeff, target, mod)
            scale = 1 << (i - j)
            comp = out[target]
            for idx, c in enumerate(term):
                comp[idx] = (comp[idx] + scale * c) % mod
    return out


def _ind(x_components, n_level, norm_table, mod):
    """ind: M^n -> M^(n+1), e_i -> gamma_i^(i+1) e_(i+1)."""
    out = [[0] * (1 << m) for m in range(n_level + 2)]
    for i, xi in enumerate(x_components):
        if not any(xi):
            continue
        lifted = _ring_transport(xi, i + 1)
        coeff = norm_table(i, i + 1)
        term = _ring_mul(lifted, coeff, i + 1, mod)
        comp = out[i + 1]
        for idx, c in enumerate(term):
            comp[idx] = (comp[idx] + c) % mod
    return out


def oliver_kernel_check(n, norm_table=None, max_enum=1 << 22):
    """Desk-check of the norm-map formulas behind the vanishing lemma.

    (1) verifies gamma_i^(i+1) * gamma_(i-j)^(n-j) = 2 gamma_(i-j)^(n-j)
    under the supplied table; (2) enumerates x in M^n and checks that
    psi_(n+1)(ind(x)) = 0 mod 2^(n+2) implies psi_n(x) = 0 mod 2^(n+1).
    """
    if n < 0 or n > 2:
        raise DomainError("enumeration is feasible for n <= 2 only")
    table = norm_table or _default_norm_table

    failures = []
    relation_ok = True
    for i in range(n + 1):
        for j in range(0, i + 1):
            target = n - j
            if target < 0:
                continue
            lhs = _ring_mul(
                _ring_transport(table(i, i + 1), target),
                table(i - j, target),
                target,
                1 << 30,
            )
            rhs = [2 * c for c in table(i - j, target)]
            if lhs != rhs:
                relation_ok = False
                failures.append({"relation": [i, j], "lhs": lhs, "rhs": rhs})
    if not relation_ok:
        return OliverReport(
            n, False, False, 0, failures, interpretation_mismatch=True
        )

    mod_small = 1 << (n + 1)
    mod_big = 1 << (n + 2)
    sizes = [1 << m for m in range(n + 1)]
    total = 1
    for s in sizes:
        total *= mod_big ** s
    if total > max_enum:
        raise CapacityExceeded(f"enumeration of {total} elements exceeds bound")

    ranges = []
    for s in sizes:
        ranges.extend([range(mod_big)] * s)
    checked = 0
    for flat in itertools.product(*ranges):
        x = []
        pos = 0
        for s in sizes:
            x.append(list(flat[pos : pos + s]))
            pos += s
        indx = _ind(x, n, table, mod_big)
        psi_top = _psi(indx, n + 1, table, mod_big)
        if any(any(c % mod_big for c in comp) for comp in psi_top):
            continue
        checked += 1
        psi_low = _psi(x, n, table, mod_small)
        if any(any(c % mod_small for c in comp) for comp in psi_low):
            failures.append({"x": x})
    return OliverReport(n, True, not failures, checked, failures)
