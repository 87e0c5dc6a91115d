"""VariableRegistry class."""
import threading
from typing import Dict, List

from .exceptions import UnknownVariableError


class VariableRegistry(object):
    """
    Append-only store of named variables. Ids are dense and allocated in registration order.
    """

    def __init__(self) -> None:
        self._names: List[str] = []
        self._ids: Dict[str, int] = {}
        self._lock = threading.Lock()

    def register(self, name: str) -> int:
        """
        Register a variable name. Registering an existing name returns its id.

        :param name: The variable name.
        :return: The VarId of the variable.
        """
        if not name:
            raise ValueError('Variable names must be non-empty')

        found = self._ids.get(name)
        if found is not None:
            return found

        with self._lock:
            found = self._ids.get(name)  # someone may have won the race
            if found is not None:
                return found

            var_id = len(self._names)
            self._names.append(name)
            self._ids[name] = var_id
            return var_id

    def id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UnknownVariableError(f'Unknown variable {name!r}')

    def name(self, var_id: int) -> str:
        if var_id < 0 or var_id >= len(self._names):
            raise UnknownVariableError(f'Unknown variable id {var_id}')

        return self._names[var_id]

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)


default_registry = VariableRegistry()


def var(name: str) -> int:
    """
    Shorthand for registering a name in the default registry.
    """
    return default_registry.register(name)
