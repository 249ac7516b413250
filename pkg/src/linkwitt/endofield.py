"""Endomorphism rings of simple Seifert modules and hermitian Morita
transport.

The endomorphism ring of a simple module over Q is a division algebra of
finite rational dimension.  Commutative rings are presented as number fields
by a primitive element; a nonsingular form b induces the involution
f -> b^{-1} f^T b, expressed as a polynomial in the primitive element.
Transporting an isotypic family of forms along Hom(M, -) yields a hermitian
matrix over the endomorphism field, on which the classical Witt invariants
are computed downstream.

Noncommutative endomorphism rings are detected and classified for reporting;
transport refuses them with a distinguished error so that no wrong numbers
are ever produced.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .rational import (Q0, Q1, QMatrix, QPoly, factor_rational_poly,
                       is_irreducible, minimal_polynomial, solve_or_kernel,
                       squarefree_part)
from .seifert import SeifertForm, SeifertModule, hom_space


class EndomorphismError(ValueError):
    pass


@dataclass
class EndomorphismRing:
    module: SeifertModule
    basis: list                     # QMatrix basis, basis[0] = identity
    structure: list                 # structure[i][j] = coords of basis_i*basis_j

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_commutative(self) -> bool:
        return all((a * b - b * a).is_zero()
                   for a, b in itertools.combinations(self.basis, 2))


def endomorphism_ring(M: SeifertModule, assume_simple: bool = False
                      ) -> EndomorphismRing:
    """Basis and structure constants of End(M) for a simple module M.

    Rejects inputs whose endomorphism ring visibly contains zero divisors
    (e.g. M + M); full simplicity certification is the caller's business.
    """
    if M.dim == 0:
        raise EndomorphismError("zero module")
    basis = hom_space(M, M)
    if not basis:
        raise EndomorphismError("empty endomorphism ring")
    # normalize: identity first
    ident = QMatrix.identity(M.dim)
    coeffs = _express(basis, ident)
    if coeffs is None:
        raise EndomorphismError("identity not in the endomorphism ring")
    basis = _basis_with_identity_first(basis, ident)
    structure = []
    for a in basis:
        row = []
        for b in basis:
            c = _express(basis, a * b)
            if c is None:
                raise EndomorphismError("endomorphism ring not closed "
                                        "under composition")
            row.append(c)
        structure.append(row)
    ring = EndomorphismRing(M, basis, structure)
    if not assume_simple:
        for b in basis:
            if b == ident:
                continue
            q = minimal_polynomial(b)
            _, factors = factor_rational_poly(q)
            if len(factors) > 1 or factors[0][1] > 1:
                raise EndomorphismError("not simple: endomorphism with "
                                        "reducible minimal polynomial")
    return ring


def _basis_with_identity_first(basis: list, ident: QMatrix) -> list:
    out = [ident]
    from .rational import RowSpace
    n = ident.rows
    space = RowSpace(n * n)
    space.add([x for row in ident.data for x in row])
    for b in basis:
        if space.add([x for row in b.data for x in row]):
            out.append(b)
    return out


def _express(basis: list, m: QMatrix):
    A = QMatrix.from_rows([[x for row in b.data for x in row]
                           for b in basis]).transpose()
    res = solve_or_kernel(A, QMatrix.column([x for row in m.data
                                             for x in row]))
    if res.particular in (None, "inconsistent"):
        return None
    return res.particular


# ---------------------------------------------------------------------------
# number field presentation
# ---------------------------------------------------------------------------

@dataclass
class NumberFieldWithInvolution:
    minpoly: QPoly                       # irreducible monic, the field is Q[x]/(minpoly)
    embedding: QMatrix                   # matrix of the primitive element in End(M)
    module: SeifertModule
    involution_image: QPoly | None = None   # image of the generator, None = unset
    fixed_field_degree: int | None = None

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def involution_is_trivial(self) -> bool:
        if self.involution_image is None:
            raise EndomorphismError("involution not set")
        return self.involution_image == QPoly.x() % self.minpoly


@dataclass
class NoncommutativeEndomorphism:
    ring: EndomorphismRing
    center_dim: int
    is_quaternion: bool

    def table_row(self, kind: str | None = None) -> str:
        if not self.is_quaternion:
            return "noncommutative (second kind)"
        if kind is None:
            return "quaternion (involution pending)"
        return kind


def as_number_field(ring: EndomorphismRing):
    """Present a commutative endomorphism ring as a number field via a
    primitive element; classify noncommutative rings and return a
    NoncommutativeEndomorphism marker instead."""
    if not ring.is_commutative():
        center = _center_dim(ring)
        quaternion = (ring.dim == 4 * center)
        return NoncommutativeEndomorphism(ring, center, quaternion)
    d = ring.dim
    rng = random.Random(0x9C0FFEE)
    candidates = list(ring.basis)
    candidates += [a + b for a, b in itertools.combinations(ring.basis, 2)]
    for _ in range(6 * d):
        combo = QMatrix.zeros(ring.module.dim, ring.module.dim)
        for b in ring.basis:
            combo = combo + b.scale(rng.randint(-3, 3))
        candidates.append(combo)
    for theta in candidates:
        mp = minimal_polynomial(theta)
        if mp.degree() == d:
            if not is_irreducible(mp):
                raise EndomorphismError("endomorphism ring is not a field "
                                        "(reducible minimal polynomial)")
            return NumberFieldWithInvolution(mp, theta, ring.module)
    raise EndomorphismError("no primitive element found; enlarge the budget")


def _center_dim(ring: EndomorphismRing) -> int:
    n = ring.module.dim
    rows = []
    for b in ring.basis:
        for i in range(n):
            for j in range(n):
                rows.append([(c * b - b * c).data[i][j] for c in ring.basis])
    res = solve_or_kernel(QMatrix.from_rows(rows))
    return len(res.kernel)


# field elements are QPoly of degree < nf.degree, arithmetic mod minpoly

def field_reduce(nf: NumberFieldWithInvolution, p: QPoly) -> QPoly:
    return p % nf.minpoly


def field_mul(nf, a: QPoly, b: QPoly) -> QPoly:
    return (a * b) % nf.minpoly


def field_neg(nf, a: QPoly) -> QPoly:
    return -a


def field_inv(nf, a: QPoly) -> QPoly:
    """Inverse modulo the (irreducible) minimal polynomial."""
    a = a % nf.minpoly
    if a.is_zero():
        raise ZeroDivisionError("inverting zero field element")
    r0, r1 = nf.minpoly, a
    s0, s1 = QPoly.zero(), QPoly.one()
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree() != 0:
        raise EndomorphismError("minimal polynomial not irreducible")
    return (s0 * (Q1 / r0.coeffs[0])) % nf.minpoly


def field_conj(nf, a: QPoly) -> QPoly:
    if nf.involution_image is None:
        raise EndomorphismError("involution not set")
    return a.compose(nf.involution_image) % nf.minpoly


def element_to_matrix(nf, a: QPoly) -> QMatrix:
    return a.eval_matrix(nf.embedding)


def matrix_to_element(nf, m: QMatrix) -> QPoly:
    """Express an endomorphism as a polynomial in the primitive element."""
    d = nf.degree
    powers = [QMatrix.identity(m.rows)]
    for _ in range(d - 1):
        powers.append(powers[-1] * nf.embedding)
    coeffs = _express(powers, m)
    if coeffs is None:
        raise EndomorphismError("endomorphism outside the generated field")
    return QPoly(coeffs)


def involution_from_form(nf: NumberFieldWithInvolution,
                         b: SeifertForm) -> NumberFieldWithInvolution:
    """Involution f -> b^{-1} f^T b induced by a nonsingular zeta-form b on
    the same simple module, recorded as the image of the primitive element."""
    err = b.validate()
    if err is not None:
        raise EndomorphismError(f"invalid form for involution: {err}")
    if b.module != nf.module:
        raise EndomorphismError("form lives on a different module")
    B = b.phi
    B_inv = B.inverse()
    conj_alpha = B_inv * nf.embedding.transpose() * B
    image = matrix_to_element(nf, conj_alpha)
    # involutivity check
    twice = image.compose(image) % nf.minpoly
    if twice != QPoly.x() % nf.minpoly:
        raise EndomorphismError("induced map is not an involution")
    fixed = _fixed_degree(nf.minpoly, image)
    return NumberFieldWithInvolution(nf.minpoly, nf.embedding, nf.module,
                                     image, fixed)


def _fixed_degree(minpoly: QPoly, image: QPoly) -> int:
    d = minpoly.degree()
    rows = []
    for k in range(d):
        xk = QPoly([Q0] * k + [Q1])
        diff = (xk.compose(image) % minpoly) - xk
        rows.append([diff.coeff(i) for i in range(d)])
    res = solve_or_kernel(QMatrix.from_rows(rows).transpose())
    return len(res.kernel)


def fixed_field_basis(nf: NumberFieldWithInvolution) -> list:
    """Basis of Fix(involution) as polynomials in the generator."""
    d = nf.degree
    rows = []
    for k in range(d):
        xk = QPoly([Q0] * k + [Q1])
        diff = (xk.compose(nf.involution_image) % nf.minpoly) - xk
        rows.append([diff.coeff(i) for i in range(d)])
    res = solve_or_kernel(QMatrix.from_rows(rows).transpose())
    return [QPoly(v) for v in res.kernel]


# ---------------------------------------------------------------------------
# Morita transport
# ---------------------------------------------------------------------------

@dataclass
class HermitianFormOverE:
    field: NumberFieldWithInvolution
    gram: list                      # k x k of QPoly entries

    @property
    def rank(self) -> int:
        return len(self.gram)

    def validate(self) -> str | None:
        nf = self.field
        k = len(self.gram)
        for row in self.gram:
            if len(row) != k:
                return "gram matrix not square"
        for i in range(k):
            for j in range(k):
                if self.gram[i][j] != field_conj(nf, self.gram[j][i]):
                    return "gram matrix not hermitian"
        return None


def transported_scalar(nf: NumberFieldWithInvolution, b: SeifertForm,
                       phi: SeifertForm) -> QPoly:
    """The endomorphism zeta * b^{-1} phi as a field element; this is the
    Morita image of a form phi on the representative module itself."""
    g = b.phi.inverse() * phi.phi
    return field_reduce(nf, matrix_to_element(nf, g) * Fraction(phi.zeta))


def morita_transport(nf: NumberFieldWithInvolution, forms: list,
                     b: SeifertForm) -> HermitianFormOverE:
    """Gram matrix over (E, involution) of an isotypic family of forms, all
    living on the representative module, against the chosen form b.

    With the standard inclusions of the summands as a Hom-basis the Gram
    matrix is diagonal with entries zeta * b^{-1} phi_i.
    """
    if nf.involution_image is None:
        raise EndomorphismError("set the involution before transporting")
    if not forms:
        return HermitianFormOverE(nf, [])
    zeta = forms[0].zeta
    if any(f.zeta != zeta for f in forms) or b.zeta != zeta:
        raise EndomorphismError("zeta mismatch in transport")
    k = len(forms)
    gram = [[QPoly.zero() for _ in range(k)] for _ in range(k)]
    for i, f in enumerate(forms):
        gram[i][i] = transported_scalar(nf, b, f)
    out = HermitianFormOverE(nf, gram)
    err = out.validate()
    if err is not None:
        raise EndomorphismError(f"transport produced a bad form: {err}")
    return out


def classify_involution(nf: NumberFieldWithInvolution) -> str:
    """Table-row label for a commutative endomorphism field."""
    if nf.involution_image is None:
        return "number field (involution unset)"
    if nf.involution_is_trivial():
        return "number field, trivial involution (first kind)"
    return "number field, nontrivial involution (second kind)"


def classify_noncommutative(nc: NoncommutativeEndomorphism,
                            b: SeifertForm | None) -> str:
    """Table-row label for a noncommutative endomorphism ring: first/second
    kind and, for quaternions of the first kind, standard vs non-standard,
    read off from the dimension of the fixed set of f -> b^{-1} f^T b."""
    if b is None:
        return nc.table_row()
    B = b.phi
    B_inv = B.inverse()
    fixed_dim = 0
    center_fixed = True
    basis = nc.ring.basis
    rows = []
    n = nc.ring.module.dim
    for m in basis:
        conj = B_inv * m.transpose() * B
        coeffs = _express(basis, conj)
        if coeffs is None:
            return "noncommutative (involution leaves the ring?)"
        rows.append(coeffs)
    k = len(basis)
    mat = QMatrix.from_rows(rows).transpose() - QMatrix.identity(k)
    fixed_dim = len(solve_or_kernel(mat).kernel)
    if not nc.is_quaternion:
        return "noncommutative, non-quaternion"
    if fixed_dim == nc.center_dim:
        return "quaternion, involution of the first kind, standard"
    if fixed_dim == 3 * nc.center_dim:
        return "quaternion, involution of the first kind, non-standard"
    return "quaternion, involution of the second kind"


# ---------------------------------------------------------------------------
# norm classes (used by the hyperbolic-pair cancellation)
# ---------------------------------------------------------------------------

def relative_discriminant(nf: NumberFieldWithInvolution) -> QPoly:
    """delta = gamma^2 for gamma = alpha - conj(alpha); E = Fix(sqrt(delta))
    when the involution is nontrivial."""
    gamma = (QPoly.x() - nf.involution_image) % nf.minpoly
    return field_mul(nf, gamma, gamma)


def is_norm_class_trivial(nf: NumberFieldWithInvolution, d: QPoly) -> bool:
    """Certified test of d in {c * conj(c)}; returns False when undecidable
    (never cancels in that case)."""
    d = field_reduce(nf, d)
    if d.is_zero():
        raise EndomorphismError("zero discriminant")
    if nf.involution_image is None or nf.involution_is_trivial():
        if nf.degree == 1:
            return squarefree_part(d.coeff(0)) == 1
        return False    # square classes of a larger field: undecided here
    if field_conj(nf, d) != d:
        return False
    if nf.fixed_field_degree == 1:
        # Fix = Q: d is a rational constant, E = Q(sqrt(m))
        if d.degree() != 0:
            return False
        delta = relative_discriminant(nf)
        if delta.degree() != 0:
            return False
        from .wittinv import norm_class_test_quadratic
        m = squarefree_part(delta.coeff(0))
        return norm_class_test_quadratic(d.coeff(0), m)
    return False
