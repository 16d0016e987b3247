"""The canonical nine-site network: a chain 1-2-...-9 with one chord (3, 8).

Sites 2 and 6 are cospectral with no permutation symmetry between them; sites
4, 8, 9 are the singlet sites, and a shared on-site potential may be placed on
sites 4 and 9 without disturbing cospectrality.
"""

from fractions import Fraction

from .network import Network

U_SITE = 2
V_SITE = 6
SINGLET_SITES = frozenset({4, 8, 9})
POTENTIAL_SITES = (4, 9)
DEFAULT_COUPLING = Fraction(27, 50)

EDGES = ((1, 2), (2, 3), (3, 4), (3, 8), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9))


def build_ninesite(k: Fraction = DEFAULT_COUPLING, potential: Fraction = Fraction(0)) -> Network:
    """Uniform coupling k on all nine edges; `potential` on sites 4 and 9."""
    k = Fraction(k)
    potential = Fraction(potential)
    onsite = [Fraction(0)] * 9
    for s in POTENTIAL_SITES:
        onsite[s - 1] = potential
    return Network(9, onsite, [(i, j, k) for i, j in EDGES])
