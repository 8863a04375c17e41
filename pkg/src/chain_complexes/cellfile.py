"""
Plain-text cell-list format for free Γ-complexes.

    # comment
    group Z^2
    0 v
    1 x (v, t1, +1) (v, e, -1)

One line per orbit cell: degree, id, then its faces in order as
``(orbit-id, group-word, sign)`` triples; orbit ids refer to cells of the
previous degree, declared earlier in the file.
"""
from __future__ import annotations

import logging
import re
from pathlib import Path

from errors import ConfigurationError
from group_core import GroupSpec

from .simplicial import Face, OrbitCell, SimplicialGammaComplex

logger = logging.getLogger(__name__)

_FACE = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]*?)\s*,\s*([+-]?\d+)\s*\)")
_HEAD = re.compile(r"^\s*(\d+)\s+(\S+)\s*(.*)$")


def parse_cell_complex(text, spec=None, name="cells"):
    cells = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("group"):
            declared = GroupSpec.parse(line.split(None, 1)[1])
            if spec is not None and spec != declared:
                raise ConfigurationError(f"Line {number}: file declares {declared}, expected {spec}")
            spec = declared
            continue
        if spec is None:
            raise ConfigurationError(f"Line {number}: no group declared before the first cell")
        match = _HEAD.match(line)
        if not match:
            raise ConfigurationError(f"Line {number}: cannot parse {raw!r}")
        degree, cell_id, rest = int(match.group(1)), match.group(2), match.group(3)
        faces_text = _FACE.findall(rest)
        if _FACE.sub("", rest).strip():
            raise ConfigurationError(f"Line {number}: trailing text in face list {rest!r}")
        previous = {c.name: i for i, c in enumerate(cells.get(degree - 1, []))}
        faces = []
        for orbit, word, sign in faces_text:
            if orbit not in previous:
                raise ConfigurationError(f"Line {number}: face orbit {orbit!r} not declared in degree {degree - 1}")
            faces.append(Face(previous[orbit], spec.parse_word(word or "e"), int(sign)))
        if degree > 0 and not faces:
            raise ConfigurationError(f"Line {number}: cell {cell_id} of degree {degree} has no faces")
        level = cells.setdefault(degree, [])
        if any(c.name == cell_id for c in level):
            raise ConfigurationError(f"Line {number}: duplicate cell id {cell_id!r}")
        level.append(OrbitCell(cell_id, degree, tuple(faces)))
    if spec is None:
        raise ConfigurationError("Cell list declares no group")
    logger.debug("Parsed cell list %s: %s", name, {k: len(v) for k, v in cells.items()})
    return SimplicialGammaComplex(spec, cells, name=name)


def load_cell_complex(path, spec=None):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"Cannot read cell list {path}: {exc}") from exc
    return parse_cell_complex(text, spec=spec, name=path.stem)
