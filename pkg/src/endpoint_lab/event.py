from __future__ import annotations

from collections.abc import Callable
from typing import Any

PhaseSubscriber = Callable[[str, dict[str, Any]], None]


class Event:
    """Construction phases, delivered as (phase, details) to each subscriber."""

    def __init__(self) -> None:
        self._subscribers: list[PhaseSubscriber] = []

    def __len__(self) -> int:
        return len(self._subscribers)

    def subscribe(self, subscriber: PhaseSubscriber) -> Callable[[], None]:
        """Subscribe and return a callback that unsubscribes again."""
        self._subscribers.append(subscriber)

        def callback():
            self.unsubscribe(subscriber)

        return callback

    def unsubscribe(self, subscriber: PhaseSubscriber) -> None:
        """Unsubscribe.

        Raises:
            ValueError

        """
        self._subscribers.remove(subscriber)

    def notify(self, phase: str, details: dict[str, Any]) -> None:
        for subscriber in list(self._subscribers):
            subscriber(phase, details)
