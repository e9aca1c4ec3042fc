from dependency_injector import containers, providers

from density.lie_closure import LieClosure
from homology.bases import CanonicalBasisStrategy, WaistBasisStrategy
from origami.catalog import Catalog

DEFAULTS = {
    "max_word_length": 8,
    "spin_direction_bound": 4,
    "basis": "waist",
    "catalog_file": "data/catalog.txt",
}


class OrigamiContainer(containers.DeclarativeContainer):
    config = providers.Configuration()

    waist_basis = providers.Singleton(WaistBasisStrategy)
    canonical_basis = providers.Singleton(CanonicalBasisStrategy)

    basis_strategy = providers.Selector(
        config.basis,
        waist=waist_basis,
        paper=waist_basis,
        canonical=canonical_basis,
    )

    catalog = providers.Singleton(Catalog.load, path=config.catalog_file)

    lie_closure = providers.Factory(
        LieClosure, max_word_length=config.max_word_length.as_int()
    )


container = OrigamiContainer()
container.config.from_dict(DEFAULTS)
