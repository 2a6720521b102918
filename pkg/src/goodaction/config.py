from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Bounds:
    subgroups: int = 600
    isomorphism: int = 200
    group_order: int = 20000
    induce_index: int = 24
    module_dim: int = 256
    exhaustive_spin: int = 4096
    tower_search: int = 200
    tower_exhaustive: int = 100

    def with_(self, **kw) -> "Bounds":
        return replace(self, **kw)


DEFAULT_BOUNDS = Bounds()
