"""Giant representations, affected points and the Local Certificates routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, log2

from .errors import ResourceLimitError
from .perm import Hom, Perm, PermGroup, StabChain
from .strings import GString, SIInstance, luks_string_iso

__all__ = [
    "is_giant",
    "GiantRep",
    "affected_points",
    "affected_orbits",
    "LocalCertificate",
    "local_certificates",
    "MAX_IMAGE_ENUMERATION",
]

MAX_IMAGE_ENUMERATION = 10**6


def is_giant(group: PermGroup) -> bool:
    """True iff ``group`` contains ``Alt`` of its domain.

    A subgroup of ``S_k`` of order at least ``k!/2`` has index at most 2,
    and the only such subgroups are ``A_k`` and ``S_k``.
    """
    k = group.degree
    return group.order() * 2 >= factorial(k)


@dataclass
class GiantRep:
    """A homomorphism ``φ: Γ → S_k`` whose image is a giant."""

    hom: Hom
    k: int = field(init=False)

    def __post_init__(self):
        self.k = self.hom.target_degree
        if not is_giant(self.hom.image()):
            raise ValueError("the homomorphism image is not a giant")

    @classmethod
    def from_images(cls, group: PermGroup, k: int, images) -> "GiantRep":
        return cls(Hom(group, k, images))

    @property
    def source(self) -> PermGroup:
        return self.hom.source

    def image_of(self, sub: PermGroup) -> PermGroup:
        return PermGroup(self.k, [self.hom(g) for g in sub.generators])


def _image_group(hom: Hom, sub: PermGroup) -> PermGroup:
    return PermGroup(hom.target_degree, [hom(g) for g in sub.generators])


def _aff(group: PermGroup, hom: Hom, points=None) -> list[int]:
    """``Aff(Δ, φ)``: points whose ``Δ``-stabilizer has a non-giant image."""
    out = []
    for orb in group.orbits():
        stab = group.stabilizer(orb[0])
        if not is_giant(_image_group(hom, stab)):
            out.extend(orb)
    out.sort()
    return out


def affected_points(group: PermGroup, rep: GiantRep) -> list[int]:
    """The points ``α`` with ``Γ_α^φ ⊉ A_k``; always a union of orbits."""
    if rep.source is not group and not group.equals(rep.source):
        raise ValueError("the giant representation is defined on a different group")
    return _aff(group, rep.hom)


def affected_orbits(group: PermGroup, rep: GiantRep) -> list[list[int]]:
    aff = set(affected_points(group, rep))
    return [o for o in group.orbits() if o[0] in aff]


@dataclass
class LocalCertificate:
    """Outcome of the Local Certificates routine.

    When ``full`` is True, ``group`` is a subgroup ``Δ`` of ``Aut_Γ(x)`` whose
    image is a giant.  Otherwise ``group`` is a non-giant ``Λ ≤ S_k``
    containing ``Aut_Γ(x)^φ``.
    """

    full: bool
    group: PermGroup
    window: list
    iterations: int
    si_calls: int = 0


def local_certificates(x: GString, group: PermGroup, rep: GiantRep, *, verify: bool = True) -> LocalCertificate:
    """Grow windows of affected points until the image drops below a giant or stabilizes."""
    n = x.domain_size
    k = rep.k
    if group.degree != n:
        raise ValueError("group degree differs from the string length")
    if k < max(8, 2 + log2(max(n, 1))):
        raise ValueError(f"need k >= max(8, 2 + log2 n); got k={k}, n={n}")
    if factorial(k) > 2 * MAX_IMAGE_ENUMERATION:
        raise ResourceLimitError(f"k={k} makes the image too large to enumerate")

    hom = rep.hom
    current = group
    window: list[int] = []
    iterations = 0
    si_calls = 0
    while True:
        cur_hom = hom.restrict_to(current)
        image = cur_hom.image()
        if not is_giant(image):
            break
        aff = _aff(current, cur_hom)
        if aff == window:
            break
        window = aff
        iterations += 1
        if image.order() > MAX_IMAGE_ENUMERATION:
            raise ResourceLimitError(f"image of order {image.order()} exceeds the enumeration limit")
        kernel = cur_hom.kernel()
        # Γ_{i+1} = union over γ ∈ Γ_i^φ of Aut_{Nγ̄}^W(x), regrouped into a group
        # γ = id contributes Aut_N^W(x); cosets whose image already lies in
        # the image of the accumulated group add nothing new
        base = luks_string_iso(SIInstance(x, x, kernel, None, tuple(window)))
        si_calls += 1
        gens: list[Perm] = list(base.group.generators)
        acc = StabChain(n)
        acc.extend(gens)
        img = StabChain(k)
        # the γ with a non-empty coset form the subgroup Γ_{i+1}^φ, so a
        # failed γ rules out its whole coset img·γ
        failed: set = set()
        for gamma in image.elements():
            if gamma in failed or img.contains(gamma):
                continue
            pre = cur_hom.preimage(gamma)
            c = luks_string_iso(SIInstance(x, x, kernel, pre, tuple(window)))
            si_calls += 1
            if c.is_empty:
                failed.update(h * gamma for h in img.elements())
                continue
            if not acc.contains(c.rep):
                acc.extend([c.rep])
                gens.append(c.rep)
                img.extend([cur_hom(c.rep)])
        current = PermGroup(n, gens, chain=acc if gens else None)

    cur_hom = hom.restrict_to(current)
    image = cur_hom.image()
    if not is_giant(image):
        result = LocalCertificate(False, image, window, iterations, si_calls)
    else:
        outside = [a for a in range(n) if a not in set(window)]
        delta = current.pointwise_stabilizer(outside) if outside else current
        result = LocalCertificate(True, delta, window, iterations, si_calls)
    if verify:
        _verify(x, hom, result)
    return result


def _verify(x: GString, hom: Hom, cert: LocalCertificate):
    if not cert.full:
        if is_giant(cert.group):
            raise AssertionError("non-fullness certificate is a giant")
        return
    vals = x.values
    for g in cert.group.generators:
        if any(vals[a] != vals[g[a]] for a in range(len(vals))):
            raise AssertionError("fullness certificate contains a non-automorphism")
    if not is_giant(_image_group(hom, cert.group)):
        raise AssertionError("fullness certificate image is not a giant")
