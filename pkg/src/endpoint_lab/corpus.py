from __future__ import annotations

from dataclasses import KW_ONLY, dataclass
import json
from pathlib import Path

from .dsl import build_function, parse_function
from .errors import FunctionSyntaxError
from .helpers import name_to_key
from .models import FunctionModel


@dataclass
class CorpusEntry:
    model: FunctionModel
    name: str | None = None
    key: str | None = None
    _: KW_ONLY
    description: str = ""
    darboux_integrable: bool = True

    def __post_init__(self):
        self.key = self.key or name_to_key(self.name)

    @classmethod
    def from_json(cls, data: dict) -> CorpusEntry:
        """Build an entry from {"name", "key"?, "description"?, "function"}.

        Raises:
            FunctionSyntaxError
            FunctionDomainError

        """
        if not isinstance(data, dict) or "function" not in data:
            raise FunctionSyntaxError("Corpus entry needs a 'function'")

        return cls(
            build_function(data["function"]),
            data.get("name"),
            data.get("key"),
            description=data.get("description", ""),
            darboux_integrable=data.get("darboux_integrable", True),
        )


class Corpus:
    entries: list[CorpusEntry]

    def __init__(self, name: str, entries: list[CorpusEntry] | None = None) -> None:
        self.name = name
        self.set_entries(entries or [])

    @property
    def entries_by_key(self) -> dict[str, CorpusEntry]:
        return {entry.key: entry for entry in self.entries}

    @property
    def keys(self) -> list[str]:
        return [entry.key for entry in self.entries]

    def set_entries(self, entries: list[CorpusEntry]) -> None:
        """Set the entries."""
        self.entries = []

        for entry in entries:
            self.add_entry(entry)

    def add_entry(self, entry: CorpusEntry) -> None:
        """Add an entry.

        Remove existing entry with the same key.
        """
        if entry.key in self.entries_by_key:
            self.remove_entry(entry.key)

        self.entries.append(entry)

    def get_entry(self, key: str) -> CorpusEntry:
        """Get an entry.

        Raises:
            KeyError

        """
        return self.entries_by_key[key]

    def get(self, key: str) -> FunctionModel:
        """Get the model of an entry.

        Raises:
            KeyError

        """
        return self.get_entry(key).model

    def remove_entry(self, key: str) -> None:
        """Remove an entry.

        Raises:
            KeyError

        """
        entry = self.get_entry(key)
        self.entries.remove(entry)

    def resolve(self, source: str) -> FunctionModel:
        """A corpus key, a path to a description file or inline JSON.

        Raises:
            FunctionSyntaxError
            FunctionDomainError

        """
        if source in self.entries_by_key:
            return self.get(source)

        path = Path(source)

        if not source.lstrip().startswith("{") and path.is_file():
            try:
                data = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise FunctionSyntaxError(f"Cannot read '{source}'", exc) from exc

            if isinstance(data, dict) and "function" in data:
                return CorpusEntry.from_json(data).model

            return build_function(data)

        if not source.lstrip().startswith("{"):
            raise FunctionSyntaxError(
                f"'{source}' is neither a corpus key, a file nor inline JSON"
            )

        return parse_function(source)
