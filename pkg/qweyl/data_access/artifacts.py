"""
Serialization helpers: algebras, modules and reports to JSON (and characters
to CSV).  Output is sorted and indented so equal jobs give equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from pydantic import BaseModel

from qweyl.models import (
    ActionEntry,
    AlgebraDump,
    BasisEntry,
    CharacterEntry,
    CoeffAlgebraDump,
    LocalWeylReport,
    ModuleDump,
    SpaceDims,
    StructureConstant,
)
from qweyl.services.coeff import CommAlgebra
from qweyl.services.liesuper import CurrentAlgebra, LieSuperAlgebra
from qweyl.services.scalars import ZERO
from qweyl.services.weylmod import WeightModule

Payload = Union[BaseModel, Sequence[BaseModel], dict, list]


def _dims(even_odd) -> SpaceDims:
    even, odd = even_odd
    return SpaceDims(even=even, odd=odd)


def dump_coeff(a: CommAlgebra) -> CoeffAlgebraDump:
    table = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            product = a.multiply_basis(i, j)
            row.append([str(product.get(k, ZERO)) for k in range(a.dim)])
        table.append(row)
    return CoeffAlgebraDump(
        name=a.name,
        labels=list(a.labels),
        unit=[str(a.unit.get(k, ZERO)) for k in range(a.dim)],
        table=table,
    )


def dump_algebra(g: LieSuperAlgebra) -> AlgebraDump:
    labels = [str(label) for label in g.labels]
    structure = []
    for i in range(g.dim):
        for j in range(g.dim):
            bracket = g.bracket_basis(i, j)
            if bracket:
                structure.append(
                    StructureConstant(
                        left=labels[i],
                        right=labels[j],
                        terms={labels[k]: str(c) for k, c in sorted(bracket.items())},
                    )
                )
    parities = [g.parity(i) for i in range(g.dim)]
    return AlgebraDump(
        name=g.name,
        labels=labels,
        parities=parities,
        dims=SpaceDims(even=parities.count(0), odd=parities.count(1)),
        structure=structure,
        coefficient_algebra=dump_coeff(g.coeff) if isinstance(g, CurrentAlgebra) else None,
    )


def dump_module(m: WeightModule) -> ModuleDump:
    basis = [
        BasisEntry(label=label, weight=list(w.coords), parity=p)
        for label, w, p in zip(m.labels, m.weights, m.parities)
    ]
    actions = []
    for g, op in enumerate(m.action):
        entries = sorted((r, c, str(v)) for (r, c), v in op.items())
        if entries:
            actions.append(ActionEntry(generator=str(m.algebra.labels[g]), entries=entries))
    return ModuleDump(highest_weight=list(m.highest.coords), dims=_dims(m.dim), basis=basis, actions=actions)


def module_report(m: WeightModule, include_module: bool = False) -> LocalWeylReport:
    return LocalWeylReport(
        highest_weight=list(m.highest.coords),
        dims=_dims(m.dim),
        character=m.character().to_entries(),
        certificate=m.certificate,
        module=dump_module(m) if include_module else None,
    )


def to_json(payload: Payload) -> str:
    if isinstance(payload, BaseModel):
        data = payload.model_dump(mode="json")
    elif isinstance(payload, (list, tuple)):
        data = [p.model_dump(mode="json") if isinstance(p, BaseModel) else p for p in payload]
    else:
        data = payload
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def character_csv(entries: Iterable[CharacterEntry]) -> str:
    entries = list(entries)
    rank = len(entries[0].weight) if entries else 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"lambda_{i}" for i in range(1, rank + 1)] + ["even", "odd"])
    for entry in entries:
        writer.writerow(list(entry.weight) + [entry.even, entry.odd])
    return buffer.getvalue()


def write_artifact(text: str, out: Optional[str] = None) -> None:
    """Write to ``out`` when given, else to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
