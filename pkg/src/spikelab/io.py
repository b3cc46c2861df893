"""Canonical JSON for matroids, spikes and set families."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .bits import mask_of
from .errors import InvalidMatroid
from .extremal import SetFamily
from .matroid import Matroid, from_circuits
from .spikes import ArmPartition, SpikeCertificate


@dataclass
class MatroidDocument:
    matroid: Matroid
    arms: ArmPartition | None = None
    t: int | None = None
    name: str | None = None


def matroid_to_dict(M: Matroid, arms: ArmPartition | None = None, t: int | None = None,
                    name: str | None = None, certificate: SpikeCertificate | None = None) -> dict:
    d: dict = {}
    name = name if name is not None else M.name
    if name:
        d["name"] = name
    d["n"] = M.n
    d["circuits"] = M.circuit_lists()
    if arms is not None:
        d["arms"] = sorted(sorted(a) for a in arms.lists())
    if t is not None:
        d["t"] = t
    if certificate is not None:
        d["certificate"] = certificate.to_dict()
    return d


def dumps(M: Matroid, **kw) -> str:
    return json.dumps(matroid_to_dict(M, **kw), separators=(", ", ": ")) + "\n"


def write_matroid(path, M: Matroid, **kw) -> None:
    Path(path).write_text(dumps(M, **kw))


def matroid_from_dict(d: dict) -> MatroidDocument:
    try:
        n = int(d["n"])
        circuits = [[int(e) for e in c] for c in d["circuits"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidMatroid(f"malformed matroid document: {exc}") from exc
    M = from_circuits(n, circuits, name=d.get("name"))
    arms = None
    if "arms" in d:
        arms = ArmPartition.of([int(x) for x in a] for a in d["arms"])
        if arms.support & ~M.ground:
            raise InvalidMatroid("arm element outside the ground set")
    t = int(d["t"]) if "t" in d else None
    return MatroidDocument(M, arms, t, d.get("name"))


def loads(text: str) -> MatroidDocument:
    return matroid_from_dict(json.loads(text))


def read_matroid(path) -> MatroidDocument:
    return loads(Path(path).read_text())


def family_to_dict(fam: SetFamily) -> dict:
    return {"n": fam.n, "members": sorted(fam.lists())}


def family_from_dict(d: dict) -> SetFamily:
    return SetFamily(int(d["n"]), tuple(mask_of(m) for m in d["members"]))


def read_family(path) -> SetFamily:
    return family_from_dict(json.loads(Path(path).read_text()))

