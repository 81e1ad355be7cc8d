"""Versioned JSON round-trips for covers, labeling schemes, and oracles.

Output is byte-stable: sorted keys, fixed separators, and only types
whose text form round-trips exactly (ints, repr-faithful floats,
strings). A deserialized structure answers every query identically to
the original. Malformed or truncated input raises SerializationError
and never yields a partial structure.
"""
from __future__ import annotations

import json

import numpy as np

from .covers import Cluster, SparseCover
from .errors import SerializationError
from .graphs import ShortestPathTree
from .labeling import LabelingScheme, VertexLabel, make_scales
from .oracle import BunchStore, HittingSet, PrunedOracle, PrunedTree, TZLevels

__all__ = ["serialize", "deserialize", "dump", "load", "FORMAT_VERSION"]

FORMAT_VERSION = 1


def _encode_cover(cov: SparseCover) -> dict:
    clusters = []
    for cl in cov.clusters:
        spt = cl.spt
        rows = [
            [int(v), int(p), int(d)]
            for v, p, d in zip(spt.members, spt.parent, spt.dist)
        ]
        clusters.append({"id": cl.id, "root": cl.root, "members": rows})
    return {
        "n": cov.n,
        "rho": cov.rho if isinstance(cov.rho, int) else float(cov.rho),
        "cap": cov.cap,
        "k": cov.k,
        "beta": float(cov.beta),
        "s": cov.s,
        "construction": cov.construction,
        "seed": cov.seed,
        "clusters": clusters,
        "padded": [int(x) for x in cov.padded],
        "stats": {str(key): int(val) for key, val in sorted(cov.stats.items())},
    }


def _decode_cover(doc: dict) -> SparseCover:
    n = doc["n"]
    clusters = []
    membership = [[] for _ in range(n)]
    for cd in doc["clusters"]:
        rows = cd["members"]
        members = np.array([r[0] for r in rows], dtype=np.int64)
        parent = np.array([r[1] for r in rows], dtype=np.int64)
        dist = np.array([r[2] for r in rows], dtype=np.int64)
        spt = ShortestPathTree(
            root=cd["root"], members=members, dist=dist, parent=parent,
            tree_id=cd["id"],
        )
        cl = Cluster(id=cd["id"], root=cd["root"], members=members, spt=spt)
        clusters.append(cl)
        for v in members:
            membership[int(v)].append(cd["id"])
    return SparseCover(
        n=n,
        rho=doc["rho"],
        cap=doc["cap"],
        k=doc["k"],
        beta=doc["beta"],
        s=doc["s"],
        clusters=clusters,
        membership=membership,
        padded=np.array(doc["padded"], dtype=np.int64),
        construction=doc["construction"],
        seed=doc["seed"],
        stats={key: val for key, val in doc["stats"].items()},
    )


def _encode_labeling(s: LabelingScheme) -> dict:
    labels = []
    for lb in s.labels:
        trees = {str(g): [int(p), int(d)] for g, (p, d) in sorted(lb.trees.items())}
        labels.append({"padded": [int(x) for x in lb.padded], "trees": trees})
    return {
        "scheme_id": s.scheme_id,
        "n": s.n,
        "k": s.k,
        "delta": s.scales.delta,
        "construction": s.construction,
        "seed": s.seed,
        "covers": [_encode_cover(c) for c in s.covers],
        "labels": labels,
    }


def _decode_labeling(doc: dict) -> LabelingScheme:
    n, k = doc["n"], doc["k"]
    scales = make_scales(n, k, doc["delta"])
    covers = [_decode_cover(c) for c in doc["covers"]]
    offsets = [0]
    for cov in covers:
        offsets.append(offsets[-1] + len(cov.clusters))
    labels = []
    for v, ld in enumerate(doc["labels"]):
        trees = {int(g): (pd[0], pd[1]) for g, pd in ld["trees"].items()}
        labels.append(
            VertexLabel(
                v=v, scheme_id=doc["scheme_id"], padded=list(ld["padded"]),
                trees=trees,
            )
        )
    return LabelingScheme(
        scheme_id=doc["scheme_id"],
        n=n,
        k=k,
        scales=scales,
        covers=covers,
        offsets=offsets[:-1],
        labels=labels,
        construction=doc["construction"],
        seed=doc["seed"],
    )


def _encode_oracle(o: PrunedOracle) -> dict:
    pruned = {}
    for w, pt in o.pruned.items():
        rows = [
            [v, a, da, dr] for v, (a, da, dr) in sorted(pt.anc.items())
        ]
        pruned[str(w)] = rows
    return {
        "n": o.n,
        "k": o.k,
        "p": o.p,
        "t": o.t,
        "s": o.s,
        "seed": o.seed,
        "level_seed": o.levels.seed,
        "levels": [[int(v) for v in a] for a in o.levels.levels],
        "comp": [int(c) for c in o.hitters.comp],
        "hitters": {
            "r": o.hitters.r,
            "members": [int(v) for v in o.hitters.members],
            "rep": [int(v) for v in o.hitters.rep],
        },
        "bunches": {
            str(v): {str(w): int(d) for w, d in sorted(b.items())}
            for v, b in sorted(o.store.bunches.items())
        },
        "pivots": {
            str(v): [[int(p), int(d)] for p, d in pv]
            for v, pv in sorted(o.store.pivots.items())
        },
        "pruned": pruned,
        "covers": [_encode_cover(c) for c in o.covers],
    }


def _decode_oracle(doc: dict) -> PrunedOracle:
    levels = TZLevels(
        t=doc["t"],
        levels=[np.array(a, dtype=np.int64) for a in doc["levels"]],
        seed=doc["level_seed"],
    )
    hd = doc["hitters"]
    members = np.array(hd["members"], dtype=np.int64)
    hitters = HittingSet(
        r=hd["r"],
        members=members,
        member_set=set(int(v) for v in members),
        rep=np.array(hd["rep"], dtype=np.int64),
        comp=np.array(doc["comp"], dtype=np.int64),
    )
    store = BunchStore(
        t=doc["t"],
        bunches={
            int(v): {int(w): d for w, d in b.items()}
            for v, b in doc["bunches"].items()
        },
        pivots={
            int(v): [(p, d) for p, d in pv] for v, pv in doc["pivots"].items()
        },
    )
    pruned = {}
    for w, rows in doc["pruned"].items():
        anc = {r[0]: (r[1], r[2], r[3]) for r in rows}
        pruned[int(w)] = PrunedTree(root=int(w), anc=anc)
    return PrunedOracle(
        n=doc["n"],
        k=doc["k"],
        p=doc["p"],
        t=doc["t"],
        s=doc["s"],
        seed=doc["seed"],
        levels=levels,
        store=store,
        hitters=hitters,
        pruned=pruned,
        covers=[_decode_cover(c) for c in doc["covers"]],
        g=None,
    )


_FORMATS = {
    SparseCover: ("cover", _encode_cover),
    LabelingScheme: ("labeling", _encode_labeling),
    PrunedOracle: ("oracle", _encode_oracle),
}

_DECODERS = {
    "cover": _decode_cover,
    "labeling": _decode_labeling,
    "oracle": _decode_oracle,
}


def serialize(obj) -> str:
    for cls, (name, enc) in _FORMATS.items():
        if isinstance(obj, cls):
            doc = {"format": name, "version": FORMAT_VERSION}
            doc.update(enc(obj))
            return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    raise SerializationError(f"cannot serialize {type(obj).__name__}")


def deserialize(text: str):
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise SerializationError(f"malformed document: {e}") from e
    if not isinstance(doc, dict):
        raise SerializationError("document is not an object")
    if doc.get("version") != FORMAT_VERSION:
        raise SerializationError(
            f"unsupported version {doc.get('version')!r}"
        )
    dec = _DECODERS.get(doc.get("format"))
    if dec is None:
        raise SerializationError(f"unknown format {doc.get('format')!r}")
    try:
        return dec(doc)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise SerializationError(f"corrupted {doc['format']} document: {e}") from e


def dump(obj, path) -> None:
    text = serialize(obj)
    with open(path, "w") as f:
        f.write(text)


def load(path):
    with open(path) as f:
        return deserialize(f.read())
