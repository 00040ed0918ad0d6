"""Tilings by right-angled p-gons, complexes of groups over them, and lattice verdicts."""
from .builders import build_any, build_f_div4, build_jigsaw, f_of
from .complexes import ComplexOfGroups, build_even_v, build_from_certificate, check_link_Kvv, local_link
from .config import SearchConfig
from .decision import Verdict, decide, decide_over_tiling, verify_cog
from .surface import TiledSurface, validate

__all__ = ["build_any", "build_f_div4", "build_jigsaw", "f_of", "ComplexOfGroups", "build_even_v",
           "build_from_certificate", "check_link_Kvv", "local_link", "SearchConfig", "Verdict",
           "decide", "decide_over_tiling", "verify_cog", "TiledSurface", "validate"]
