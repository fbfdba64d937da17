"""Person names: parsing author strings and normalizing for comparison."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass


@dataclass(frozen=True)
class PersonName:
    """One author. ``raw`` keeps the unmodified source span."""

    family: str
    given: str | None = None
    raw: str = ""

    def __post_init__(self):
        if not self.family:
            raise ValueError("PersonName.family must be non-empty")
        if not self.raw:
            object.__setattr__(self, "raw", self.display())

    def display(self) -> str:
        return f"{self.given} {self.family}" if self.given else self.family


_ET_AL_RE = re.compile(r",?\s*\bet\s+al\.?", re.IGNORECASE)
# ", and" must come before "," so the Oxford-comma form doesn't leave a
# dangling "and X" part.
_AUTHOR_SPLIT_RE = re.compile(r"\s*,\s*and\s+|\s*,\s*|\s+and\s+|\s*&\s*|\s*;\s*")


def parse_person(raw: str) -> PersonName | None:
    """Split one author span into given/family. Family is the last token."""
    raw = raw.strip()
    tokens = raw.split()
    if not tokens:
        return None
    family = tokens[-1].strip(".,")
    if not family:
        return None
    given = " ".join(tokens[:-1]) or None
    return PersonName(family=family, given=given, raw=raw)


def split_author_list(text: str) -> tuple[list[PersonName], bool]:
    """Split an author field into names; 'et al.' sets a flag, never a name."""
    et_al = bool(_ET_AL_RE.search(text))
    text = _ET_AL_RE.sub("", text)
    names = []
    for part in _AUTHOR_SPLIT_RE.split(text):
        person = parse_person(part)
        if person is not None:
            names.append(person)
    return names, et_al


def fold(text: str) -> str:
    """Lowercase and strip diacritics/compatibility forms for matching."""
    decomposed = unicodedata.normalize("NFKD", text)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return stripped.casefold()


def canonical_family(name: PersonName) -> str:
    return fold(name.family)


def canonical_given(name: PersonName) -> str:
    return fold(name.given) if name.given else ""
