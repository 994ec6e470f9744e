from __future__ import annotations

import slugify

from .errors import NameKeyError


def name_to_key(name: str | None) -> str:
    """Corpus keys and report file names from display names.

    Raises:
        NameKeyError

    """
    if not name:
        raise NameKeyError

    key = slugify.slugify(name, separator="_")

    if not key:
        raise NameKeyError

    return key
