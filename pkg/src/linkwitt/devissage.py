"""Reduction of a Seifert form to an orthogonal sum of forms on simple
modules, grouped into isotypic pieces.

The reduction loop takes any simple submodule L of the underlying module; if
the form vanishes on L it passes to the subquotient L-perp/L, otherwise it
splits off L as an orthogonal summand.  The dichotomy is forced: the radical
of the restricted form is a submodule of the simple L.  Composition length
strictly decreases, so the loop terminates.

Simplicity is certified.  The fast path is a MeatAxe-style search (spin null
vectors of irreducible factors of the minimal polynomial of sampled algebra
elements) together with the two-sided spin criterion, which is sound whenever
the chosen factor's nullity equals its degree.  The complete fallback
computes the Jacobson radical of the acting algebra through the trace form
(valid in characteristic zero) and then hunts for zero divisors or
idempotents in the endomorphism ring; quaternion endomorphism algebras over Q
are decided exactly by Hilbert symbols on the norm form.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .rational import (Q0, QMatrix, RowSpace, factor_rational_poly,
                       minimal_polynomial, solve_or_kernel)
from .seifert import (SeifertError, SeifertForm, SeifertModule,
                      SeifertMorphism, find_isomorphism, hom_space,
                      induced_form_on_subquotient, perp_basis, restrict_form,
                      spin_submodule, submodule_from_basis)
from . import endofield


class SimplicityUndecided(RuntimeError):
    """Raised when simplicity cannot be certified with the implemented
    decision procedures (endomorphism division algebras beyond quaternions
    over Q)."""


@dataclass
class SimpleCertificate:
    kind: str           # "dimension-1" | "norton" | "schur-field" | "quaternion-division"
    detail: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# acting algebra
# ---------------------------------------------------------------------------

def algebra_basis(V: SeifertModule) -> list:
    """Basis of the unital subalgebra of End(Q^n) generated by s, e_1..e_mu."""
    n = V.dim
    if n == 0:
        return []
    space = RowSpace(n * n)
    basis = []

    def vec(m):
        return [x for row in m.data for x in row]

    queue = []
    for m in [QMatrix.identity(n)] + V.generators():
        if space.add(vec(m)):
            basis.append(m)
            queue.append(m)
    gens = V.generators()
    while queue:
        m = queue.pop()
        for g in gens:
            prod = m * g
            if space.add(vec(prod)):
                basis.append(prod)
                queue.append(prod)
    return basis


def algebra_radical(basis: list, n: int) -> list:
    """Jacobson radical of the algebra spanned by `basis` acting faithfully
    on Q^n: kernel of the trace form (x, y) -> Tr(x y)."""
    k = len(basis)
    if k == 0:
        return []
    gram = QMatrix(k, k, [[_trace(basis[i] * basis[j]) for j in range(k)]
                          for i in range(k)])
    res = solve_or_kernel(gram)
    out = []
    for coeffs in res.kernel:
        m = QMatrix.zeros(n, n)
        for c, b in zip(coeffs, basis):
            if c:
                m = m + b.scale(c)
        if not m.is_zero():
            out.append(m)
    return out


def _trace(m: QMatrix) -> Fraction:
    return sum((m.data[i][i] for i in range(m.rows)), Q0)


# ---------------------------------------------------------------------------
# simplicity
# ---------------------------------------------------------------------------

_STREAM_RNG_SEED = 0xA1FA


def _element_stream(V: SeifertModule):
    """Deterministic stream of algebra elements used for MeatAxe sampling."""
    gens = V.generators()
    s = V.s
    yield s
    for e in V.projections:
        yield s * e + e * s
    for e in V.projections:
        yield s * e
    for a, b in itertools.combinations(gens, 2):
        yield a * b + b
    rng = random.Random(_STREAM_RNG_SEED)
    words = [g for g in gens]
    for _ in range(12):
        # short random words with small integer coefficients
        acc = QMatrix.zeros(V.dim, V.dim)
        for _ in range(rng.randint(2, 4)):
            w = QMatrix.identity(V.dim)
            for _ in range(rng.randint(1, 3)):
                w = w * rng.choice(words)
            acc = acc + w.scale(rng.randint(-3, 3))
        yield acc


def _spin_matrices(mats: list, vectors, width: int) -> RowSpace:
    space = RowSpace(width)
    queue = []
    for v in vectors:
        if space.add(v):
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for m in mats:
            w = m.apply(v)
            if space.add(w):
                queue.append(w)
    return space


def _kernel_basis(m: QMatrix) -> list:
    return solve_or_kernel(m).kernel


def _simplicity_witness(V: SeifertModule):
    """('simple', certificate) or ('submodule', inclusion of a proper nonzero
    submodule)."""
    n = V.dim
    if n == 0:
        raise SeifertError("zero module")
    if n == 1:
        return "simple", SimpleCertificate("dimension-1")
    gens = V.generators()
    gens_t = [g.transpose() for g in gens]

    # fast path: sampled algebra elements, factored minimal polynomials
    for count, a in enumerate(_element_stream(V)):
        mp = minimal_polynomial(a)
        if mp.degree() < 1:
            continue
        _, factors = factor_rational_poly(mp)
        for p, _mult in factors:
            pa = p.eval_matrix(a)
            ker = _kernel_basis(pa)
            for v in ker:
                spun = _spin_matrices(gens, [v], n)
                if 0 < spun.dim() < n:
                    sub, incl = submodule_from_basis(
                        V, spun.basis_matrix().transpose())
                    return "submodule", incl
            if len(ker) == p.degree():
                # Norton certification: one vector on each side suffices
                ker_t = _kernel_basis(p.eval_matrix(a.transpose()))
                spun_t = _spin_matrices(gens_t, [ker_t[0]], n)
                if spun_t.dim() == n:
                    return "simple", SimpleCertificate(
                        "norton",
                        {"element_index": count, "factor": p})
                ann = solve_or_kernel(spun_t.basis_matrix()).kernel
                sub_basis = QMatrix.from_rows(ann).transpose()
                sub, incl = submodule_from_basis(V, sub_basis)
                return "submodule", incl
        if count >= 7:
            break

    # complete fallback: algebra radical, then the endomorphism ring
    basis = algebra_basis(V)
    rad = algebra_radical(basis, n)
    if rad:
        cols = []
        for m in rad:
            cols.extend([m.col(j) for j in range(n)])
        spun = _spin_matrices(gens, cols, n)
        assert 0 < spun.dim() < n
        sub, incl = submodule_from_basis(V, spun.basis_matrix().transpose())
        return "submodule", incl

    return _semisimple_witness(V)


def _semisimple_witness(V: SeifertModule):
    """Simplicity decision for a module whose acting algebra is semisimple:
    find zero divisors / nilpotents in End(V), or certify it is a division
    algebra."""
    n = V.dim
    ends = hom_space(V, V)
    k = len(ends)
    if k == 1:
        return "simple", SimpleCertificate("schur-field", {"end_dim": 1})

    def witness_from(mat: QMatrix):
        ker = _kernel_basis(mat)
        sub_basis = QMatrix.from_rows(ker).transpose()
        sub, incl = submodule_from_basis(V, sub_basis)
        return "submodule", incl

    rng = random.Random(_STREAM_RNG_SEED ^ 0xE11D)
    candidates = list(ends)
    candidates += [a + b for a, b in itertools.combinations(ends, 2)]
    for _ in range(60):
        combo = QMatrix.zeros(n, n)
        for b in ends:
            combo = combo + b.scale(rng.randint(-4, 4))
        candidates.append(combo)

    commutative = all((a * b - b * a).is_zero()
                      for a, b in itertools.combinations(ends, 2))
    for b in candidates:
        if b.is_zero():
            continue
        q = minimal_polynomial(b)
        if q.degree() < 1:
            continue
        _, factors = factor_rational_poly(q)
        if len(factors) > 1 or factors[0][1] > 1:
            p1 = factors[0][0]
            return witness_from(p1.eval_matrix(b))
        if commutative and q.degree() == k:
            # primitive element with irreducible minimal polynomial:
            # End(V) is a number field, V is simple
            return "simple", SimpleCertificate(
                "schur-field", {"end_dim": k, "minpoly": q})

    if commutative:
        raise SimplicityUndecided(
            "no primitive endomorphism found in a commutative endomorphism "
            "ring; enlarge the search budget")

    # noncommutative endomorphism ring: quaternion over Q is decidable
    center = _algebra_center(ends)
    if len(center) == 1 and k == 4:
        quac = _quaternion_data(ends)
        if quac is None:
            raise SimplicityUndecided("4-dimensional endomorphism ring "
                                      "without quaternion presentation")
        a, b, i_mat, j_mat = quac
        if _quaternion_is_division(a, b):
            return "simple", SimpleCertificate(
                "quaternion-division", {"a": a, "b": b})
        sol = _solve_conic(a, b)
        if sol is None:
            raise SimplicityUndecided("split quaternion algebra: no small "
                                      "conic point found")
        z, x, y = sol
        u = QMatrix.identity(ends[0].rows).scale(z) + i_mat.scale(x) \
            + j_mat.scale(y)
        assert not u.is_zero() and u.det() == 0
        return witness_from(u)
    raise SimplicityUndecided(
        f"cannot certify simplicity: endomorphism ring of dimension {k} "
        f"with center of dimension {len(center)}")


def _algebra_center(basis: list) -> list:
    """Basis of the center of the algebra spanned by `basis` (assumed
    multiplicatively closed up to span)."""
    k = len(basis)
    n = basis[0].rows
    rows = []
    for b in basis:
        for i in range(n):
            for j in range(n):
                row = []
                for c in basis:
                    comm = c * b - b * c
                    row.append(comm.data[i][j])
                rows.append(row)
    res = solve_or_kernel(QMatrix.from_rows(rows))
    out = []
    for coeffs in res.kernel:
        m = QMatrix.zeros(n, n)
        for c, b in zip(coeffs, basis):
            if c:
                m = m + b.scale(c)
        out.append(m)
    return out


def _quaternion_data(ends: list):
    """Standard generators of a 4-dimensional algebra with center Q: returns
    (a, b, i, j) with i^2 = a, j^2 = b, ij = -ji, or None."""
    n = ends[0].rows
    try:
        traces = [_regular_trace(ends, b) for b in ends]
    except SeifertError:
        return None
    system = QMatrix.from_rows([[t] for t in traces]).transpose()
    res = solve_or_kernel(system)
    zero_trace = []
    for coeffs in res.kernel:
        m = QMatrix.zeros(n, n)
        for c, b in zip(coeffs, ends):
            if c:
                m = m + b.scale(c)
        zero_trace.append(m)
    if len(zero_trace) != 3:
        return None
    i_mat = zero_trace[0]
    sq = i_mat * i_mat
    a = _scalar_of(sq)
    if a is None:
        return None
    if a == 0:
        return None
    # anticommutant of i inside the trace-zero part
    for cand in zero_trace[1:] + [zero_trace[1] + zero_trace[2],
                                  zero_trace[1] - zero_trace[2]]:
        anti = i_mat * cand + cand * i_mat
        if anti.is_zero():
            b_val = _scalar_of(cand * cand)
            if b_val not in (None, 0):
                return a, b_val, i_mat, cand
    # solve the linear anticommutation system
    rows = []
    for idx in range(n * n):
        row = []
        for z in zero_trace:
            anti = i_mat * z + z * i_mat
            row.append(anti.data[idx // n][idx % n])
        rows.append(row)
    res = solve_or_kernel(QMatrix.from_rows(rows))
    for coeffs in res.kernel:
        j_mat = QMatrix.zeros(n, n)
        for c, z in zip(coeffs, zero_trace):
            if c:
                j_mat = j_mat + z.scale(c)
        if j_mat.is_zero():
            continue
        b_val = _scalar_of(j_mat * j_mat)
        if b_val not in (None, 0):
            return a, b_val, i_mat, j_mat
    return None


def _regular_trace(basis: list, x: QMatrix) -> Fraction:
    """Trace of left multiplication by x on the span of basis."""
    tr = Q0
    for idx, b in enumerate(basis):
        coeffs = _express_in_span(basis, x * b)
        if coeffs is None:
            raise SeifertError("span is not multiplicatively closed")
        tr += coeffs[idx]
    return tr


def _express_in_span(basis: list, m: QMatrix):
    n = m.rows
    A = QMatrix.from_rows([[x for row in b.data for x in row]
                           for b in basis]).transpose()
    target = QMatrix.column([x for row in m.data for x in row])
    res = solve_or_kernel(A, target)
    if res.particular in (None, "inconsistent"):
        return None
    return res.particular


def _scalar_of(m: QMatrix):
    """c such that m == c * identity, else None."""
    n = m.rows
    c = m.data[0][0]
    ident = QMatrix.identity(n).scale(c)
    return c if m == ident else None


def _quaternion_is_division(a: Fraction, b: Fraction) -> bool:
    from .wittinv import hilbert_symbol
    places = {2, "inf"}
    for v in (a, b):
        for p in _prime_support(v):
            places.add(p)
    return any(hilbert_symbol(a, b, p) == -1 for p in places)


def _prime_support(x: Fraction):
    from .rational import factor_int
    n = abs(x.numerator * x.denominator)
    return factor_int(n).keys() if n > 1 else []


def _solve_conic(a: Fraction, b: Fraction):
    """Nontrivial rational solution of z^2 = a x^2 + b y^2, by bounded
    search over integers after clearing denominators.  Returns (z, x, y) or
    None."""
    da = a.denominator
    db = b.denominator
    A = int(a * da * da * db * db)   # a -> A with x scaled
    B = int(b * db * db * da * da)
    # search z^2 = A x^2 + B y^2 over small integers
    bound = max(64, abs(A) + abs(B))
    for x in range(0, 40):
        for y in range(0, 40):
            if x == 0 and y == 0:
                continue
            val = A * x * x + B * y * y
            if val < 0:
                continue
            z = _isqrt(val)
            if z * z == val:
                return (Fraction(z), Fraction(x * da * db),
                        Fraction(y * da * db))
    _ = bound
    return None


def _isqrt(n: int) -> int:
    import math
    return math.isqrt(n) if n >= 0 else -1


# ---------------------------------------------------------------------------
# public simplicity API
# ---------------------------------------------------------------------------

def is_simple(V: SeifertModule):
    """(True, certificate) or (False, witness inclusion of a proper nonzero
    submodule)."""
    if V.dim == 0:
        raise SeifertError("zero module")
    verdict, payload = _simplicity_witness(V)
    if verdict == "simple":
        return True, payload
    return False, payload


def find_simple_submodule(V: SeifertModule):
    """A certified simple submodule: (module, inclusion into V, certificate)."""
    if V.dim == 0:
        raise SeifertError("zero module")
    current = V
    incl_chain = QMatrix.identity(V.dim)
    while True:
        verdict, payload = _simplicity_witness(current)
        if verdict == "simple":
            sub, incl = submodule_from_basis(V, incl_chain)
            return sub, incl, payload
        witness = payload
        incl_chain = incl_chain * witness.matrix
        current = witness.source


def composition_series(V: SeifertModule):
    """Chain 0 = V_0 < ... < V_s = V with simple quotients.

    Returns a list of (inclusion morphism of V_i into V, simple quotient
    V_i / V_{i-1}).
    """
    if V.validate() is not None:
        raise SeifertError(V.validate())
    steps = []
    basis = QMatrix.zeros(V.dim, 0)
    while basis.cols < V.dim:
        sub, incl = submodule_from_basis(V, basis)
        quot, proj, section = _quotient_by_basis(V, basis)
        simple, s_incl, cert = find_simple_submodule(quot)
        lifted = section * s_incl.matrix
        basis = basis.hstack(lifted) if basis.cols else lifted
        sub2, incl2 = submodule_from_basis(V, basis)
        steps.append((incl2, simple))
    return steps


def _quotient_by_basis(V: SeifertModule, basis: QMatrix):
    from .seifert import quotient_module
    sub, incl = submodule_from_basis(V, basis)
    return quotient_module(V, incl)


# ---------------------------------------------------------------------------
# Witt reduction
# ---------------------------------------------------------------------------

@dataclass
class IsotypicGroup:
    module: SeifertModule                 # representative simple module
    forms: list                           # SeifertForm objects on module
    witnesses: list                       # isomorphisms piece -> representative
    certificate: SimpleCertificate | None = None


@dataclass
class AnisotropicDecomposition:
    groups: list
    log: list
    seed: int = 0

    def total_rank(self) -> int:
        return sum(len(g.forms) for g in self.groups)


def _isotropic_candidate(f: SeifertForm):
    """Search for a proper nonzero submodule on which the form vanishes,
    preferring them over arbitrary submodules: reducing through isotropic
    simples is what makes metabolic inputs collapse completely.

    Candidate submodules are spins of null-space vectors of factored sampled
    algebra elements, together with small combinations of null-space basis
    vectors (these catch diagonal lagrangians of orthogonal sums)."""
    V = f.module
    n = V.dim
    gens = V.generators()
    best = None
    for count, a in enumerate(_element_stream(V)):
        mp = minimal_polynomial(a)
        if mp.degree() >= 1:
            _, factors = factor_rational_poly(mp)
            for p, _mult in factors:
                ker = _kernel_basis(p.eval_matrix(a))
                vectors = list(ker)
                for i, j in itertools.islice(
                        itertools.combinations(range(len(ker)), 2), 24):
                    vectors.append([x + y for x, y in zip(ker[i], ker[j])])
                    vectors.append([x - y for x, y in zip(ker[i], ker[j])])
                for v in vectors:
                    spun = _spin_matrices(gens, [v], n)
                    d = spun.dim()
                    if not 0 < d < n:
                        continue
                    basis = spun.basis_matrix().transpose()
                    iso = (basis.transpose() * f.phi * basis).is_zero()
                    if iso and (best is None or d < best[1]):
                        best = (basis, d)
        if best is not None and count >= 2:
            break
        if count >= 7:
            break
    if best is None:
        return None
    sub, incl = submodule_from_basis(V, best[0])
    return incl


def witt_reduce(f: SeifertForm, seed: int = 0) -> AnisotropicDecomposition:
    """Witt-class-preserving reduction to forms on simple modules.

    At each step an isotropic simple submodule is reduced away when one is
    found, otherwise a simple summand is split off.  Pieces are grouped
    isotypically; hyperbolic pairs inside a group are cancelled when the
    class computation is decidable (always when the two forms are exact
    negatives).
    """
    err = f.validate()
    if err is not None:
        raise SeifertError(f"invalid input form: {err}")
    log = [f"seed {seed}"]
    pieces = []
    work = [f.promote() if f.module.ring == "Z" else f]
    while work:
        g = work.pop()
        if g.module.dim == 0:
            continue
        iso_incl = _isotropic_candidate(g)
        if iso_incl is not None:
            # any simple inside an isotropic submodule is an isotropic simple
            inner, inner_incl, _cert = find_simple_submodule(iso_incl.source)
            incl_matrix = iso_incl.matrix * inner_incl.matrix
            sub, incl = submodule_from_basis(g.module, incl_matrix)
            reduced, _section = induced_form_on_subquotient(g, incl)
            log.append(f"isotropic simple of dim {sub.dim}: "
                       f"pass to subquotient of dim {reduced.module.dim}")
            work.append(reduced)
            continue
        simple, incl, cert = find_simple_submodule(g.module)
        restriction = restrict_form(g, incl)
        if restriction.phi.is_zero():
            reduced, _section = induced_form_on_subquotient(g, incl)
            log.append(f"isotropic simple of dim {simple.dim}: "
                       f"pass to subquotient of dim {reduced.module.dim}")
            work.append(reduced)
        else:
            pieces.append((simple, restriction, cert))
            perp = perp_basis(g, incl)
            perp_mod, perp_incl = submodule_from_basis(g.module, perp)
            log.append(f"split off simple of dim {simple.dim}; "
                       f"remainder dim {perp_mod.dim}")
            work.append(restrict_form(g, perp_incl))
    groups = isotypic_group(pieces, log)
    groups = [_cancel_hyperbolic_pairs(gr, log) for gr in groups]
    groups = [gr for gr in groups if gr.forms]
    groups.sort(key=_group_sort_key)
    return AnisotropicDecomposition(groups, log, seed)


def isotypic_group(pieces, log=None) -> list:
    """Group (module, form) pieces by isomorphism class; transport all forms
    onto the first-found representative of each class."""
    groups: list[IsotypicGroup] = []
    for item in pieces:
        module, form = item[0], item[1]
        cert = item[2] if len(item) > 2 else None
        placed = False
        for gr in groups:
            iso = find_isomorphism(module, gr.module)
            if iso is not None:
                gr.forms.append(form.transport(iso))
                gr.witnesses.append(iso)
                placed = True
                break
        if not placed:
            ident = SeifertMorphism(module, module,
                                    QMatrix.identity(module.dim), check=False)
            groups.append(IsotypicGroup(module, [form], [ident], cert))
    if log is not None:
        log.append(f"isotypic grouping: {len(groups)} class(es), sizes "
                   f"{[len(g.forms) for g in groups]}")
    return groups


def _group_sort_key(gr: IsotypicGroup):
    return (gr.module.dim, len(gr.forms),
            tuple(tuple(str(x) for x in row) for row in gr.module.s.data))


def _cancel_hyperbolic_pairs(gr: IsotypicGroup, log) -> IsotypicGroup:
    """Remove pairs of forms whose orthogonal sum is metabolic.  Exact
    negatives always cancel; otherwise the decision goes through the
    endomorphism field when its class group is decidable."""
    forms = list(gr.forms)
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(range(len(forms)), 2):
            if _pair_cancels(gr.module, forms[i], forms[j]):
                log.append(f"cancel hyperbolic pair on dim-{gr.module.dim} "
                           f"simple (indices {i}, {j})")
                forms = [x for t, x in enumerate(forms) if t not in (i, j)]
                changed = True
                break
    return IsotypicGroup(gr.module, forms, gr.witnesses, gr.certificate)


def _pair_cancels(module: SeifertModule, f1: SeifertForm,
                  f2: SeifertForm) -> bool:
    if f2.phi == -f1.phi or f1.phi == -f2.phi:
        return True
    try:
        ring = endofield.endomorphism_ring(module, assume_simple=True)
        nf = endofield.as_number_field(ring)
    except (SeifertError, endofield.EndomorphismError):
        return False
    if isinstance(nf, endofield.NoncommutativeEndomorphism):
        return False
    b = SeifertForm(module, f1.zeta, f1.phi.scale(f1.zeta))
    try:
        nf = endofield.involution_from_form(nf, b)
    except endofield.EndomorphismError:
        return False
    g1 = endofield.transported_scalar(nf, b, f1)
    g2 = endofield.transported_scalar(nf, b, f2)
    prod = endofield.field_mul(nf, g1, g2)
    if endofield.is_norm_class_trivial(nf, endofield.field_neg(nf, prod)):
        return True
    # bounded search for an explicit isometry u with u^T f2 u = -f1; a hit
    # exhibits the diagonal-type lagrangian even when the class computation
    # is undecidable
    target = -f1.phi
    basis = ring.basis
    rng = random.Random(0xCA4CE1)
    candidates = list(basis)
    candidates += [a + b2 for a, b2 in itertools.combinations(basis, 2)]
    candidates += [a - b2 for a, b2 in itertools.combinations(basis, 2)]
    for _ in range(60):
        combo = QMatrix.zeros(module.dim, module.dim)
        for m in basis:
            combo = combo + m.scale(rng.randint(-2, 2))
        candidates.append(combo)
    for u in candidates:
        if u.is_zero():
            continue
        if u.transpose() * f2.phi * u == target:
            return True
    return False
