#-----------------------------------------------------------------------------+
import json
from abc import ABC, abstractmethod

class EFModel(ABC):
    """
    Interface of every EtaForge value type that crosses the CLI boundary.
    Concrete subclasses are immutable values with an exact JSON form in which
    rationals and big floats are carried as decimal strings.

    Methods
    -------
    to_dict() -> dict
        JSON-ready representation, deterministic key order.
    from_dict(data : dict) -> EFModel
        Inverse of to_dict(), a classmethod.
    to_json(indent : int) -> str
        Serialized to_dict().
    """

    @abstractmethod
    def to_dict(self) -> dict:
        raise NotImplementedError

    @classmethod
    @abstractmethod
    def from_dict(cls, data: dict) -> "EFModel":
        raise NotImplementedError

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)
