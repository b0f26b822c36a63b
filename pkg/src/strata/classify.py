"""Connected components of strata and the component of a given permutation."""

import json
from dataclasses import dataclass

from .errors import (
    BadOrders,
    BadProfile,
    DivisorMismatch,
    InternalContradiction,
    PairParityUndefinedForEvenG,
    Undecided,
    UsageError,
)
from .perm import reversal, require_admissible
from .rauzy import same_component
from .surface import (
    permutation_profile,
    singularity_profile,
    spin_parity_perm,
    spin_parity_surface,
    suspend,
)

HYP, EVEN, ODD, NONHYP, CONNECTED = "hyperelliptic", "even", "odd", "nonhyperelliptic", "connected"


def _check_profile(profile):
    profile = tuple(sorted((int(k) for k in profile), reverse=True))
    if not profile or any(k < 1 for k in profile):
        raise BadProfile(f"zero degrees must be positive, got {list(profile)}")
    if sum(profile) % 2:
        raise BadProfile(f"degrees of {list(profile)} have odd sum")
    return profile


def profile_genus(profile):
    return sum(_check_profile(profile)) // 2 + 1


def stratum_dim(profile):
    """Complex dimension 2g + n - 1 of H(k_1, ..., k_n)."""
    profile = _check_profile(profile)
    return 2 * profile_genus(profile) + len(profile) - 1


def quadratic_stratum_dim(orders, g):
    """Dimension 2g + n - 2 of a stratum of quadratic differentials Q(l_1..l_n)."""
    orders = [int(x) for x in orders]
    if any(x == 0 or x < -1 for x in orders):
        raise BadOrders(f"orders must be -1 or positive, got {orders}")
    if sum(orders) != 4 * g - 4:
        raise BadOrders(f"orders sum to {sum(orders)}, need 4g-4 = {4 * g - 4}")
    return 2 * g + len(orders) - 2


@dataclass(frozen=True)
class ComponentLabel:
    profile: tuple
    genus: int
    tag: str

    def __str__(self):
        prof = ",".join(map(str, self.profile))
        return f"H^{self.tag}({prof})"


def _tags_low_genus(profile, g):
    # genus 2 and 3 are tabulated separately
    if g == 2:
        return [HYP] if profile in ((2,), (1, 1)) else [CONNECTED]
    if profile in ((4,), (2, 2)):
        return [HYP, ODD]
    return [CONNECTED]


def _tags(profile, g):
    if g <= 3:
        return _tags_low_genus(profile, g)
    all_even = all(k % 2 == 0 for k in profile)
    if profile == (2 * g - 2,):
        return [HYP, EVEN, ODD]
    if len(profile) == 2 and profile[0] == profile[1]:
        if all_even:
            return [HYP, EVEN, ODD]
        return [HYP, NONHYP]
    if all_even:
        return [EVEN, ODD]
    return [CONNECTED]


def components_of_stratum(profile, g=None):
    profile = _check_profile(profile)
    genus = sum(profile) // 2 + 1
    if g is not None and g != genus:
        raise BadProfile(f"profile {list(profile)} has genus {genus}, not {g}")
    return [ComponentLabel(profile, genus, t) for t in _tags(profile, genus)]


def hyperelliptic_parity(g, kind="single"):
    """Spin parity of the hyperelliptic component of H(2g-2) or H(g-1, g-1)."""
    if g < 2:
        raise UsageError(f"genus must be at least 2, got {g}")
    if kind == "single":
        return ((g + 1) // 2) % 2
    if kind == "pair":
        if g % 2 == 0:
            raise PairParityUndefinedForEvenG(f"H(g-1,g-1) has odd zeros for g={g}")
        return ((g + 1) // 2) % 2
    raise UsageError(f"kind must be 'single' or 'pair', got {kind!r}")


def hyperelliptic_spin_from_divisor(fixed, pairs, g=None):
    """Parity sum [k_i/2] + sum l_j + 1 for a hyperelliptic divisor.

    ``fixed`` lists the half-degrees k_i at Weierstrass points and
    ``pairs`` the l_j of pairs of conjugate points, with
    sum k_i + 2 sum l_j = g - 1.
    """
    fixed, pairs = [int(k) for k in fixed], [int(x) for x in pairs]
    if any(x < 0 for x in fixed + pairs):
        raise DivisorMismatch("multiplicities must be nonnegative")
    total = sum(fixed) + 2 * sum(pairs)
    if g is None:
        g = total + 1
    if total != g - 1 or g < 2:
        raise DivisorMismatch(f"sum k_i + 2 sum l_j = {total} does not match g - 1 with g >= 2")
    return (sum(k // 2 for k in fixed) + sum(pairs) + 1) % 2


def is_hyperelliptic_component(p):
    """Whether p lies in the class of the reversal on the same letters.

    Only the strata H(2g-2) and H(g-1, g-1) have a hyperelliptic
    component, and the reversal on 2g (resp. 2g+1) letters lies in it.
    """
    p = require_admissible(p)
    prof = permutation_profile(p).stratum
    g = sum(prof) // 2 + 1
    if prof not in ((2 * g - 2,), (g - 1, g - 1)):
        return False
    return same_component(p, reversal(len(p)))


def _hyp_parity(profile, g):
    if profile == (2 * g - 2,):
        return hyperelliptic_parity(g, "single")
    if len(profile) == 2 and profile[0] == profile[1] and g % 2 == 1:
        return hyperelliptic_parity(g, "pair")
    return None


@dataclass(frozen=True)
class Classification:
    pi: tuple
    label: ComponentLabel
    spin_parity: object  # 0, 1 or None

    def to_dict(self):
        return {"pi": list(self.pi), "profile": list(self.label.profile),
                "genus": self.label.genus, "component": self.label.tag,
                "spin_parity": self.spin_parity}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def _decide(profile, g, tags, parity, hyp):
    if len(tags) == 1:
        tag = tags[0]
    elif hyp:
        tag = HYP
    elif parity is not None and (EVEN in tags or ODD in tags):
        tag = ODD if parity else EVEN
    elif NONHYP in tags:
        tag = NONHYP
    else:
        raise InternalContradiction(f"no label for {list(profile)}")
    if tag not in tags:
        raise InternalContradiction(f"label {tag} is not a component of H({list(profile)})")
    if tag == HYP and parity is not None:
        expected = _hyp_parity(profile, g)
        if expected is not None and expected != parity:
            raise InternalContradiction("hyperelliptic class with the wrong spin parity")
    return tag


def classify_permutation(p):
    p = require_admissible(p)
    profile = singularity_profile(suspend(p))
    stratum = profile.stratum
    if stratum != permutation_profile(p).stratum:
        raise InternalContradiction("suspension and vertex count disagree on the profile")
    g = profile.genus
    tags = _tags(stratum, g)
    parity = spin_parity_perm(p) if profile.all_even else None
    hyp = HYP in tags and len(tags) > 1 and is_hyperelliptic_component(p)
    if HYP in tags and len(tags) == 1:
        hyp = True
    tag = _decide(stratum, g, tags, parity, hyp)
    return Classification(tuple(p), ComponentLabel(stratum, g, tag), parity)


def classify_surface(surface):
    """Component of a square-tiled surface where invariants decide it.

    Spin parity separates everything except a hyperelliptic component
    from the one sharing its parity; that case raises :class:`Undecided`.
    """
    profile = singularity_profile(surface)
    stratum, g = profile.stratum, profile.genus
    if not stratum:
        raise BadProfile("surface has no zeros")
    tags = _tags(stratum, g)
    parity = spin_parity_surface(surface) if profile.all_even else None
    if len(tags) == 1:
        return ComponentLabel(stratum, g, tags[0]), parity
    if parity is not None:
        hyp_par = _hyp_parity(stratum, g) if HYP in tags else None
        tag = ODD if parity else EVEN
        if hyp_par is not None and parity == hyp_par:
            if tag not in tags:
                return ComponentLabel(stratum, g, HYP), parity
            raise Undecided(f"parity {parity} is shared by the hyperelliptic component")
        if tag in tags:
            return ComponentLabel(stratum, g, tag), parity
    raise Undecided(f"invariants do not separate the components of H({list(stratum)})")
