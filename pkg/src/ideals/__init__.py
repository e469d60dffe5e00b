from .base import AdmissibilityReport, Ideal, MembershipVerdict, Verdict
from .density import DensityZeroIdeal
from .even import EvenFinIdeal
from .fin import FinIdeal
from .partition import FinPerBlockIdeal, LocalBlocksIdeal, MeetsFinBlocksIdeal
from .restrict import RestrictedIdeal, restrict

CATALOG = {
    cls.name: cls
    for cls in (FinIdeal, EvenFinIdeal, MeetsFinBlocksIdeal, FinPerBlockIdeal,
                DensityZeroIdeal, LocalBlocksIdeal)
}


def get_ideal_class(name: str):
    """Catalog lookup by command-line name; None when unknown."""
    return CATALOG.get(name)


def catalog_ideals():
    return [cls() for cls in CATALOG.values()]


__all__ = [
    'AdmissibilityReport',
    'CATALOG',
    'DensityZeroIdeal',
    'EvenFinIdeal',
    'FinIdeal',
    'FinPerBlockIdeal',
    'Ideal',
    'LocalBlocksIdeal',
    'MeetsFinBlocksIdeal',
    'MembershipVerdict',
    'RestrictedIdeal',
    'Verdict',
    'catalog_ideals',
    'get_ideal_class',
    'restrict',
]
