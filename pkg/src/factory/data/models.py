from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional

from domain import InstanceConfig
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory


# =========================
#        DATA MODELS
# =========================
@dataclass(frozen=True, kw_only=True)
class Instance:
    """A validated config together with the forms context built from it"""

    config: InstanceConfig
    ctx: FormsContext
    ideal: Optional[frozenset[int]] = None

    @property
    def digest(self) -> str:
        return self.config.digest()

    @cached_property
    def factory(self) -> ElementaryFactory:
        return ElementaryFactory(self.ctx)

    def describe(self) -> dict[str, Any]:
        payload = {"digest": self.digest, "ring": self.ctx.ring.spec.label(), **self.ctx.describe()}
        if self.ideal is not None:
            payload["ideal"] = sorted(int(x) for x in self.ideal)
        return payload


@dataclass(frozen=True, kw_only=True)
class WordParameters:
    """Shape of random generator words"""

    count: int = 100
    min_length: int = 1
    max_length: int = 6
    include_extra: bool = True
    include_permutations: bool = False
    random_seed: int = field(default=37)
