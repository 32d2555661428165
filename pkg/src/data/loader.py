"""
Text formats for families and deletion sequences.

Family file:

    # comment lines and blank lines are ignored
    n 3
    3
    1,2,3

Sequence file: a family block for the target, then `delete` lines in
order, then an optional `kind` line (plain, uc, ideal:i or optimal:i).

A stream is several family blocks, each starting at its own `n <size>` line.
The empty set is written `{}` and is rejected unless stripping is asked for.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from src.errors import FranklError, ParseError
from src.family.core import Family, check_universe, mask_from_elements, elements_of
from src.sequences.deletion import DeletionSequence, SequenceKind

logger = logging.getLogger(__name__)

EMPTY_SET = "{}"


@dataclass
class _Block:
    """Raw pieces of one family block while parsing."""

    n: int
    header_line: int
    members: List[int] = field(default_factory=list)
    deletions: List[int] = field(default_factory=list)
    kind: Optional[SequenceKind] = None


def _content_lines(text: str) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _parse_header(line: str, number: int) -> Optional[int]:
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        return None
    try:
        size = int(parts[1])
    except ValueError:
        raise ParseError(f"bad universe size {parts[1]!r}", number)
    try:
        return check_universe(size)
    except FranklError as exc:
        raise ParseError(str(exc), number)


def _parse_set(text: str, n: int, number: Optional[int], strip_empty: bool) -> Optional[int]:
    """Mask of a comma-separated element list; None for a stripped empty set."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1].strip()
    if not body:
        if strip_empty:
            logger.warning("line %d: dropping the empty set", number)
            return None
        raise ParseError("the empty set is not allowed here (strip it with --strip-empty)", number)
    try:
        elements = [int(token) for token in body.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}", number)
    for i in elements:
        if not 1 <= i <= n:
            raise ParseError(f"element {i} is outside 1..{n}", number)
    return mask_from_elements(elements, n)


def _parse_blocks(text: str, strip_empty: bool, allow_sequence: bool) -> List[_Block]:
    blocks: List[_Block] = []
    seen = set()
    for number, line in _content_lines(text):
        n = _parse_header(line, number)
        if n is not None:
            blocks.append(_Block(n, number))
            seen = set()
            continue
        if not blocks:
            raise ParseError(f"expected a header 'n <size>', got {line!r}", number)
        block = blocks[-1]

        keyword, _, rest = line.partition(" ")
        if keyword in ("delete", "kind") and not allow_sequence:
            raise ParseError(f"'{keyword}' lines only belong in sequence files", number)
        if keyword == "kind":
            if block.kind is not None:
                raise ParseError("more than one kind line", number)
            try:
                block.kind = SequenceKind.parse(rest)
            except ParseError as exc:
                raise ParseError(str(exc), number)
            continue
        if block.kind is not None:
            raise ParseError("the kind line must come last", number)
        if keyword == "delete":
            mask = _parse_set(rest, block.n, number, strip_empty=False)
            block.deletions.append(mask)
            continue
        if block.deletions:
            raise ParseError("member lines must come before delete lines", number)

        mask = _parse_set(line, block.n, number, strip_empty)
        if mask is None:
            continue
        if mask in seen:
            logger.warning("line %d: duplicate member %s ignored", number, line)
            continue
        seen.add(mask)
        block.members.append(mask)
    return blocks


def parse_members(text: str, n: int) -> int:
    """Mask of a command-line set such as 1,3 or {1,3}."""
    return _parse_set(text, n, None, strip_empty=False)


def _family_of(block: _Block) -> Family:
    return Family.from_masks(block.n, block.members)


def parse_family(text: str, strip_empty: bool = False) -> Family:
    """
    Parse one family block.

    Args:
        text: File contents
        strip_empty: Drop `{}` lines with a warning instead of rejecting them

    Returns:
        The Family

    Raises:
        ParseError: malformed header, member line, or more than one block
    """
    blocks = _parse_blocks(text, strip_empty, allow_sequence=False)
    if len(blocks) != 1:
        raise ParseError(f"expected exactly one family block, found {len(blocks)}")
    return _family_of(blocks[0])


def parse_family_stream(text: str, strip_empty: bool = False) -> List[Family]:
    """Parse consecutive family blocks."""
    return [_family_of(b) for b in _parse_blocks(text, strip_empty, allow_sequence=False)]


def parse_sequence(text: str, strip_empty: bool = False) -> DeletionSequence:
    """
    Parse a sequence file; structural sequence invariants are checked here.

    Raises:
        ParseError: malformed file
        MalformedSequence: deletions do not take A to the target
    """
    blocks = _parse_blocks(text, strip_empty, allow_sequence=True)
    if len(blocks) != 1:
        raise ParseError(f"expected exactly one sequence block, found {len(blocks)}")
    block = blocks[0]
    kind = block.kind or SequenceKind.plain()
    return DeletionSequence(block.n, _family_of(block), tuple(block.deletions), kind)


def format_members(mask: int) -> str:
    return ",".join(str(i) for i in elements_of(mask)) or EMPTY_SET


def render_family(family: Family) -> str:
    lines = [f"n {family.universe_size}"]
    lines.extend(format_members(m) for m in family.members)
    return "\n".join(lines) + "\n"


def render_family_stream(families: Iterable[Family]) -> str:
    return "".join(render_family(f) for f in families)


def render_sequence(sequence: DeletionSequence) -> str:
    lines = [render_family(sequence.target).rstrip("\n")]
    lines.extend(f"delete {format_members(x)}" for x in sequence.deletions)
    lines.append(f"kind {sequence.kind.label}")
    return "\n".join(lines) + "\n"


class FamilyFileLoader:
    """Load family and sequence files relative to a directory, caching parsed files."""

    def __init__(self, data_dir: str = ".", strip_empty: bool = False):
        """
        Initialize the loader.

        Args:
            data_dir: Directory relative paths are resolved against
            strip_empty: Drop the empty set from member lines instead of rejecting it
        """
        self.data_dir = Path(data_dir)
        self.strip_empty = strip_empty
        self._families: Dict[Path, Family] = {}
        self._sequences: Dict[Path, DeletionSequence] = {}

    def _read(self, resolved: Path) -> str:
        try:
            return resolved.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {resolved}: {exc.strerror or exc}")

    def load_family(self, path: str) -> Family:
        """Load a family file (cached)."""
        resolved = self.data_dir / path
        if resolved not in self._families:
            self._families[resolved] = parse_family(self._read(resolved), self.strip_empty)
        return self._families[resolved]

    def load_sequence(self, path: str) -> DeletionSequence:
        """Load a sequence file (cached)."""
        resolved = self.data_dir / path
        if resolved not in self._sequences:
            self._sequences[resolved] = parse_sequence(self._read(resolved), self.strip_empty)
        return self._sequences[resolved]

    def load_stream(self, path: str) -> List[Family]:
        return parse_family_stream(self._read(self.data_dir / path), self.strip_empty)
