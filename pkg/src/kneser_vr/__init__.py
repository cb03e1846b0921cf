"""Independence complexes of Kneser graphs as Vietoris-Rips complexes.

``Ind(KG(n, k))`` is ``VR(F_n^[2n+k]; 2(n-1))``: the n-subsets of
``[2n+k]`` under the symmetric-difference metric, at scale ``2(n-1)``.
"""

from .bounds import bigdim_bound, codim1_bound, connectivity_bound, emit_table, smalldim_bound
from .combinatorics import NSubsetSpace, Subset, enumerate_space, kneser_space, symdiff_distance
from .complex import FlagComplex, build_complex, kneser_complex
from .errors import CertificateError, InvalidInputError, KneserVRError, ResourceLimitError, UnsupportedOrderError
from .generators import build_certificate
from .homology import GF2, PrimeField, ResourceCaps, betti_numbers, persistence_barcode
from .maps import concentration

__version__ = "0.1.0"

__all__ = [
    "GF2",
    "CertificateError",
    "FlagComplex",
    "InvalidInputError",
    "KneserVRError",
    "NSubsetSpace",
    "PrimeField",
    "ResourceCaps",
    "ResourceLimitError",
    "Subset",
    "UnsupportedOrderError",
    "betti_numbers",
    "bigdim_bound",
    "build_certificate",
    "build_complex",
    "codim1_bound",
    "concentration",
    "connectivity_bound",
    "emit_table",
    "enumerate_space",
    "kneser_complex",
    "kneser_space",
    "persistence_barcode",
    "smalldim_bound",
    "symdiff_distance",
]
