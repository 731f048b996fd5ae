from .classical import classical_code, format_alist, load_alist, parse_alist, random_biregular_classical, write_alist
from .hgp import hypergraph_product, relabel, repetition_tanner
from .ising import ising_code, repetition_code, trivial_field_code
from .toric import face_support, ising_toric, toric_code, toric_relabeling, vertex_support

__all__ = [
    "ising_code",
    "repetition_code",
    "trivial_field_code",
    "toric_code",
    "ising_toric",
    "toric_relabeling",
    "face_support",
    "vertex_support",
    "hypergraph_product",
    "repetition_tanner",
    "relabel",
    "random_biregular_classical",
    "classical_code",
    "load_alist",
    "parse_alist",
    "format_alist",
    "write_alist",
]
