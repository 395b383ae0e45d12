"""Riemann-Hurwitz bookkeeping and ready-made homological actions.

Constructors return the explicit basis actions for the standard families:
free cyclic actions (blocks of m-cycles with a_g, b_g fixed), involutions
with fixed points, order-3 actions (3-cycle blocks, companion pair blocks,
a/b twist blocks) and the S_3 actions with defect psi_r^3 = b_g.  Basis
order is a_1..a_g, b_1..b_g mapped to coordinates 0..2g-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .action import Action
from .extension import ExtensionSpec, FiniteGroup, realize_group
from .zkmod import MatrixZk, ModuleVector, Modulus, ZkmodError, vector


class InvalidParams(ZkmodError):
    pass


class NonIntegerGenus(ZkmodError):
    pass


@dataclass(frozen=True)
class OrbifoldSignature:
    """(genus; cone orders), hyperbolic."""

    genus: int
    cone_orders: tuple = ()

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidParams("genus must be nonnegative")
        if any(m < 2 for m in self.cone_orders):
            raise InvalidParams("cone orders must be at least 2")
        area = 2 * self.genus - 2 + sum(Fraction(m - 1, m) for m in self.cone_orders)
        if area <= 0:
            raise InvalidParams(f"signature {self} is not hyperbolic")


def riemann_hurwitz_genus(sig: OrbifoldSignature, group_order: int) -> int:
    """Genus of the cover: g = 1 + |L|(gamma - 1) + (|L|/2) sum(1 - 1/m_i)."""
    if group_order < 2:
        raise InvalidParams("group order must be at least 2")
    for m in sig.cone_orders:
        if group_order % m:
            raise InvalidParams(f"cone order {m} does not divide group order {group_order}")
    g = (
        1
        + group_order * (sig.genus - 1)
        + Fraction(group_order, 2) * sum(Fraction(m - 1, m) for m in sig.cone_orders)
    )
    if g.denominator != 1 or g < 0:
        raise NonIntegerGenus(f"inconsistent branch data: g = {g}")
    return int(g)


def a_index(g: int, i: int) -> int:
    if not 1 <= i <= g:
        raise InvalidParams(f"a_{i} out of range for genus {g}")
    return i - 1


def b_index(g: int, i: int) -> int:
    if not 1 <= i <= g:
        raise InvalidParams(f"b_{i} out of range for genus {g}")
    return g + i - 1


def basis_vector(k: int, g: int, label: str, i: int, exp: int = 1) -> ModuleVector:
    idx = a_index(g, i) if label == "a" else b_index(g, i)
    coords = [0] * (2 * g)
    coords[idx] = exp
    return vector(k, coords)


def combo(k: int, g: int, *terms) -> ModuleVector:
    """Sum of (label, i, exp) terms, e.g. combo(k, g, ("b",1,1), ("b",3,2))."""
    coords = [0] * (2 * g)
    for label, i, exp in terms:
        idx = a_index(g, i) if label == "a" else b_index(g, i)
        coords[idx] += exp
    return vector(k, coords)


def _matrix_from_images(k: int, n: int, images: dict) -> MatrixZk:
    """images[j] = coefficient list of the image of basis vector e_j."""
    if sorted(images) != list(range(n)):
        raise InvalidParams("every basis vector needs an image")
    rows = tuple(tuple(images[j][i] % k for j in range(n)) for i in range(n))
    return MatrixZk(Modulus(k), rows)


def _unit(n: int, idx: int, coeff: int = 1) -> list:
    out = [0] * n
    out[idx] = coeff
    return out


def _pair(n: int, i1: int, i2: int, c1: int, c2: int) -> list:
    out = [0] * n
    out[i1] = c1
    out[i2] = c2
    return out


@dataclass(frozen=True)
class ActionSetup:
    """An action plus the presentation data of its deck-group extension."""

    action: Action
    genus: int
    group_name: str
    generator_perms: tuple
    relators: tuple
    defects: tuple
    signature: Optional[OrbifoldSignature] = None

    @property
    def modulus(self) -> int:
        return self.action.modulus.k

    def realize(self) -> FiniteGroup:
        return realize_group(
            self.action.names, self.generator_perms, self.relators, name=self.group_name
        )

    def extension_spec(self) -> ExtensionSpec:
        return ExtensionSpec(self.realize(), self.action, self.defects)

    @property
    def defect(self) -> ModuleVector:
        if len(self.defects) != 1:
            raise InvalidParams("single-defect accessor on a multi-relator setup")
        return self.defects[0]


def _cycle_perm(m: int) -> str:
    return "(" + " ".join(str(i) for i in range(1, m + 1)) + ")"


def free_cyclic_action(m: int, gamma: int, k: int) -> ActionSetup:
    """Free Z_m action: gamma blocks of m-cycles, a_g and b_g fixed, g = m*gamma + 1.

    gamma here counts the cycle blocks on the cover side; the quotient surface
    has genus gamma + 1 (free Riemann-Hurwitz).  The defect is psi^m = b_g.
    """
    if m < 2 or gamma < 1 or (k != 0 and k < 2):
        raise InvalidParams("need m >= 2, gamma >= 1 and a valid modulus")
    g = m * gamma + 1
    n = 2 * g
    images = {}
    for base in (0, g):
        for t in range(gamma):
            lo = base + m * t
            for s in range(m - 1):
                images[lo + s] = _unit(n, lo + s + 1)
            images[lo + m - 1] = _unit(n, lo)
        images[base + g - 1] = _unit(n, base + g - 1)
    mat = _matrix_from_images(k, n, images)
    if mat.power(m).rows != MatrixZk.identity(k, n).rows:
        raise AssertionError("free cyclic action must have order m")
    defect = basis_vector(k, g, "b", g)
    return ActionSetup(
        action=Action(Modulus(k), n, ("psi",), (mat,)),
        genus=g,
        group_name=f"Z{m}",
        generator_perms=(_cycle_perm(m),),
        relators=(f"psi^{m}",),
        defects=(defect,),
        signature=OrbifoldSignature(gamma + 1),
    )


def literal_cyclic_matrix(g: int, k: int) -> MatrixZk:
    """The single (g-1)-cycle form a_j -> a_{j+1}, a_{g-1} -> a_1 (generic g).

    Has order g - 1 on homology, so it only realizes a Z_m action when
    g = m + 1; provided for side-by-side comparison at other genera.
    """
    n = 2 * g
    images = {}
    for base in (0, g):
        for j in range(g - 2):
            images[base + j] = _unit(n, base + j + 1)
        images[base + g - 2] = _unit(n, base)
        images[base + g - 1] = _unit(n, base + g - 1)
    return _matrix_from_images(k, n, images)


def involution_action(gamma: int, n: int, k: int) -> ActionSetup:
    """Involution with 2n fixed points: swaps on the first 2*gamma indices,
    inversion on the rest; g = 2*gamma + n - 1 and the defect is zero."""
    if n < 1 or gamma < 0 or (k != 0 and k < 2):
        raise InvalidParams("need n >= 1, gamma >= 0 and a valid modulus")
    g = 2 * gamma + n - 1
    if g < 2:
        raise InvalidParams("cover genus must be at least 2")
    nn = 2 * g
    images = {}
    for base in (0, g):
        for j in range(gamma):
            images[base + 2 * j] = _unit(nn, base + 2 * j + 1)
            images[base + 2 * j + 1] = _unit(nn, base + 2 * j)
        for i in range(2 * gamma, g):
            images[base + i] = _unit(nn, base + i, -1)
    mat = _matrix_from_images(k, nn, images)
    if mat.power(2).rows != MatrixZk.identity(k, nn).rows:
        raise AssertionError("involution action must square to the identity")
    return ActionSetup(
        action=Action(Modulus(k), nn, ("psi",), (mat,)),
        genus=g,
        group_name="Z2",
        generator_perms=("(1 2)",),
        relators=("psi^2",),
        defects=(vector(k, [0] * nn),),
        signature=OrbifoldSignature(gamma, (2,) * (2 * n)),
    )


def order3_action(gamma: int, n: int, l: int, k: int) -> ActionSetup:
    """Order-3 action with n+1 fixed points: g = n - 1 (gamma = 0) or
    3*gamma + n - 1.

    Block structure: 3-cycles on the first 3*gamma indices, then l companion
    pair blocks (x -> y -> -x-y), then a/b twist blocks (a -> b -> -a-b) on
    the remaining g - 3*gamma - 2*l single indices.  Zero defect.
    """
    if gamma < 0 or l < 0 or (k != 0 and k < 2):
        raise InvalidParams("bad parameters")
    if gamma == 0:
        if n < 3:
            raise InvalidParams("genus-zero quotient needs n >= 3")
        g = n - 1
    else:
        if n < 1:
            raise InvalidParams("need n >= 1")
        g = 3 * gamma + n - 1
    if 3 * gamma + 2 * l > g:
        raise InvalidParams("pair blocks exceed available indices")
    nn = 2 * g
    images = {}
    for base in (0, g):
        for j in range(gamma):
            lo = base + 3 * j
            images[lo] = _unit(nn, lo + 1)
            images[lo + 1] = _unit(nn, lo + 2)
            images[lo + 2] = _unit(nn, lo)
        for i in range(l):
            lo = base + 3 * gamma + 2 * i
            images[lo] = _unit(nn, lo + 1)
            images[lo + 1] = _pair(nn, lo, lo + 1, -1, -1)
    for s in range(3 * gamma + 2 * l, g):
        images[s] = _unit(nn, g + s)
        images[g + s] = _pair(nn, s, g + s, -1, -1)
    mat = _matrix_from_images(k, nn, images)
    if mat.power(3).rows != MatrixZk.identity(k, nn).rows:
        raise AssertionError("order-3 action must cube to the identity")
    return ActionSetup(
        action=Action(Modulus(k), nn, ("psi",), (mat,)),
        genus=g,
        group_name="Z3",
        generator_perms=("(1 2 3)",),
        relators=("psi^3",),
        defects=(vector(k, [0] * nn),),
        signature=OrbifoldSignature(gamma, (3,) * (n + 1)),
    )


def s3_action(n: int, k: int) -> ActionSetup:
    """S_3 with r fixed-point free: g = (3n - 7)/2, quotient of genus zero.

    r acts by 3-cycle blocks on the first g - 1 indices with a_g, b_g fixed;
    h inverts with the index pattern (1)(2 3) per block.  Defects:
    psi_r^3 = b_g, psi_h^2 = (psi_r psi_h)^2 = 1.
    """
    if n < 5 or n % 2 == 0:
        raise InvalidParams("need n >= 5 odd")
    if k != 0 and k < 2:
        raise InvalidParams("bad modulus")
    g = (3 * n - 7) // 2
    nn = 2 * g
    blocks = (g - 1) // 3
    img_r = {}
    img_h = {}
    for base in (0, g):
        for j in range(blocks):
            lo = base + 3 * j
            img_r[lo] = _unit(nn, lo + 1)
            img_r[lo + 1] = _unit(nn, lo + 2)
            img_r[lo + 2] = _unit(nn, lo)
            img_h[lo] = _unit(nn, lo, -1)
            img_h[lo + 1] = _unit(nn, lo + 2, -1)
            img_h[lo + 2] = _unit(nn, lo + 1, -1)
        img_r[base + g - 1] = _unit(nn, base + g - 1)
        img_h[base + g - 1] = _unit(nn, base + g - 1, -1)
    mr = _matrix_from_images(k, nn, img_r)
    mh = _matrix_from_images(k, nn, img_h)
    ident = MatrixZk.identity(k, nn).rows
    rh = mr @ mh
    if mr.power(3).rows != ident or mh.power(2).rows != ident or (rh @ rh).rows != ident:
        raise AssertionError("matrices must satisfy the S_3 relations")
    zero = vector(k, [0] * nn)
    return ActionSetup(
        action=Action(Modulus(k), nn, ("r", "h"), (mr, mh)),
        genus=g,
        group_name="S3",
        generator_perms=("(1 2 3)", "(1 2)"),
        relators=("r^3", "h^2", "r.h.r.h"),
        defects=(basis_vector(k, g, "b", g), zero, zero),
        signature=OrbifoldSignature(0, (2,) * (n + 1)),
    )


@dataclass(frozen=True)
class EpimorphismSpec:
    """Surjection of an orbifold group onto L: handle and cone generator images.

    Validity: the long product relation maps to the identity, every cone
    generator image has exactly the cone order, and the images generate L.
    """

    signature: OrbifoldSignature
    group: FiniteGroup
    handle_images: tuple
    cone_images: tuple

    def validate(self) -> None:
        sig = self.signature
        grp = self.group
        if len(self.handle_images) != sig.genus:
            raise InvalidParams("one (alpha, beta) image pair per handle")
        if len(self.cone_images) != len(sig.cone_orders):
            raise InvalidParams("one image per cone generator")
        for img, order in zip(self.cone_images, sig.cone_orders):
            if grp.element_order(img) != order:
                raise InvalidParams(
                    f"cone image must have order {order}, got {grp.element_order(img)}"
                )
        prod = 0
        for img in self.cone_images:
            prod = grp.mul(prod, img)
        for alpha, beta in self.handle_images:
            comm = grp.mul(grp.mul(alpha, beta), grp.mul(grp.inv(alpha), grp.inv(beta)))
            prod = grp.mul(prod, comm)
        if prod != 0:
            raise InvalidParams("product relation does not map to the identity")
        gens = [g for pair in self.handle_images for g in pair] + list(self.cone_images)
        if len(grp.subgroup_closure(gens)) != grp.order:
            raise InvalidParams("images do not generate the target group")


def order3_epimorphism(gamma: int, n: int, l: int) -> EpimorphismSpec:
    """Cone images phi, phi^-1 alternating on the first 2l generators, phi on
    the remaining n+1-2l (which must be divisible by 3)."""
    if l < 0 or 2 * l > n + 1 or (n + 1 - 2 * l) % 3:
        raise InvalidParams("need 0 <= 2l <= n+1 with 3 | (n+1-2l)")
    grp = realize_group(("phi",), ["(1 2 3)"], ["phi^3"], name="Z3")
    phi = grp.generator_element(0)
    phi2 = grp.inv(phi)
    cones = []
    for _ in range(l):
        cones.extend([phi, phi2])
    cones.extend([phi] * (n + 1 - 2 * l))
    sig = OrbifoldSignature(gamma, (3,) * (n + 1))
    spec = EpimorphismSpec(sig, grp, ((0, 0),) * gamma, tuple(cones))
    spec.validate()
    return spec


def involution_epimorphism(gamma: int, n: int) -> EpimorphismSpec:
    grp = realize_group(("phi",), ["(1 2)"], ["phi^2"], name="Z2")
    phi = grp.generator_element(0)
    sig = OrbifoldSignature(gamma, (2,) * (2 * n))
    spec = EpimorphismSpec(sig, grp, ((0, 0),) * gamma, (phi,) * (2 * n))
    spec.validate()
    return spec


def s3_epimorphism(n: int, l1: int, l2: int) -> EpimorphismSpec:
    """2*l1 cone generators to h, then 2*l2 to rh, the rest to r^2 h."""
    if n % 2 == 0 or n < 5:
        raise InvalidParams("need n >= 5 odd")
    if l1 < 1 or l2 < 0 or 2 * l1 + 2 * l2 > n + 1:
        raise InvalidParams("bad (l1, l2)")
    grp = realize_group(("r", "h"), ["(1 2 3)", "(1 2)"], ["r^3", "h^2", "r.h.r.h"], name="S3")
    h = grp.evaluate_word("h")
    rh = grp.evaluate_word("r.h")
    r2h = grp.evaluate_word("r.r.h")
    cones = [h] * (2 * l1) + [rh] * (2 * l2) + [r2h] * (n + 1 - 2 * l1 - 2 * l2)
    sig = OrbifoldSignature(0, (2,) * (n + 1))
    spec = EpimorphismSpec(sig, grp, (), tuple(cones))
    spec.validate()
    return spec
