"""Orthogonality (Greechie) diagrams and two-valued-state enumeration.

A diagram is a hypergraph: atoms are rays, blocks are maximal contexts
(orthonormal bases). Atoms shared between blocks are link atoms. A
two-valued state assigns {0,1} to atoms with exactly one 1 per block, a
classical truth assignment.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError
from .linalg import as_vector
from .observables import ContextOperator

RAY_MATCH_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Atom:
    id: str
    ray: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class GreechieDiagram:
    """Atoms plus equal-size blocks; block size is the Hilbert dimension."""

    atoms: tuple[Atom, ...]
    blocks: tuple[tuple[str, ...], ...]
    dim: int

    def __post_init__(self):
        ids = [a.id for a in self.atoms]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate atom ids")
        known = set(ids)
        for block in self.blocks:
            if len(block) != self.dim:
                raise ValueError(f"block {block} does not have {self.dim} atoms")
            if len(set(block)) != self.dim:
                raise ValueError(f"block {block} repeats an atom")
            missing = set(block) - known
            if missing:
                raise ValueError(f"block references unknown atoms {sorted(missing)}")
        if self.dim == 2:
            warnings.warn(
                "dimension-2 blocks form isolated Boolean sublogics with no shared "
                "observables; accepted for negative tests only",
                stacklevel=3,
            )

    def atom_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.atoms)


@dataclass(frozen=True)
class TwoValuedState:
    """A {0,1} assignment with exactly one 1 in each block."""

    assignment: dict[str, int]

    def is_valid_for(self, diagram: GreechieDiagram) -> bool:
        if set(self.assignment) != set(diagram.atom_ids()):
            return False
        if any(v not in (0, 1) for v in self.assignment.values()):
            return False
        return all(
            sum(self.assignment[a] for a in block) == 1 for block in diagram.blocks
        )


def rays_match(u: np.ndarray, v: np.ndarray, tol: float = RAY_MATCH_TOL) -> bool:
    """True when u and v span the same ray: |<u,v>| equals |u||v| within tol."""
    a = as_vector(u)
    b = as_vector(v)
    if a.shape != b.shape:
        return False
    denom = float(np.linalg.norm(a) * np.linalg.norm(b))
    if denom == 0.0:
        return False
    return 1.0 - abs(np.vdot(a, b)) / denom <= tol


def diagram_from_contexts(
    contexts: Sequence[ContextOperator], tol: float = RAY_MATCH_TOL
) -> GreechieDiagram:
    """Build the orthogonality diagram of a list of contexts.

    One block per context; basis rays that coincide up to a complex phase
    (within ``tol``) are merged into a single atom, which makes shared
    (link) observables explicit. Atom ids follow first appearance, scanning
    contexts in order and each basis in slot order.
    """
    if not contexts:
        raise ValueError("need at least one context")
    dim = contexts[0].dim
    if any(c.dim != dim for c in contexts):
        raise DimensionMismatchError("all contexts must share one dimension")
    atoms: list[Atom] = []
    blocks: list[tuple[str, ...]] = []
    for context in contexts:
        block: list[str] = []
        for ray in context.basis:
            for atom in atoms:
                if atom.ray is not None and rays_match(atom.ray, ray, tol):
                    block.append(atom.id)
                    break
            else:
                atom = Atom(id=f"a{len(atoms)}", ray=ray)
                atoms.append(atom)
                block.append(atom.id)
        blocks.append(tuple(block))
    return GreechieDiagram(atoms=tuple(atoms), blocks=tuple(blocks), dim=dim)


def link_atoms(diagram: GreechieDiagram) -> list[str]:
    """Atoms appearing in two or more blocks, in atom order."""
    counts = {a.id: 0 for a in diagram.atoms}
    for block in diagram.blocks:
        for atom_id in block:
            counts[atom_id] += 1
    return [a.id for a in diagram.atoms if counts[a.id] >= 2]


def two_valued_states(diagram: GreechieDiagram) -> list[TwoValuedState]:
    """All {0,1} assignments with exactly one 1 per block, exhaustively.

    Backtracking over atoms in diagram order with per-block counting: a
    block may never hold two 1s, and once fully assigned must hold exactly
    one. Output order is lexicographic in the assignment bits, so results
    are deterministic. The empty list is a valid outcome.
    """
    ids = diagram.atom_ids()
    index = {atom_id: k for k, atom_id in enumerate(ids)}
    blocks = [tuple(index[a] for a in block) for block in diagram.blocks]
    blocks_of_atom: list[list[int]] = [[] for _ in ids]
    for b, block in enumerate(blocks):
        for k in block:
            blocks_of_atom[k].append(b)

    ones = [0] * len(blocks)
    unassigned = [len(block) for block in blocks]
    assignment = [0] * len(ids)
    found: list[TwoValuedState] = []

    def assign(k: int) -> None:
        if k == len(ids):
            found.append(
                TwoValuedState(assignment={ids[i]: assignment[i] for i in range(len(ids))})
            )
            return
        for value in (0, 1):
            ok = True
            for b in blocks_of_atom[k]:
                new_ones = ones[b] + value
                if new_ones > 1:
                    ok = False
                    break
                if unassigned[b] == 1 and new_ones == 0:
                    ok = False
                    break
            if not ok:
                continue
            assignment[k] = value
            for b in blocks_of_atom[k]:
                ones[b] += value
                unassigned[b] -= 1
            assign(k + 1)
            for b in blocks_of_atom[k]:
                ones[b] -= value
                unassigned[b] += 1
        assignment[k] = 0

    assign(0)
    return found


def is_separating(
    states: Sequence[TwoValuedState], diagram: GreechieDiagram
) -> tuple[bool, tuple[str, str] | None]:
    """Whether every atom pair is told apart by some state.

    Returns (True, None) when separating, otherwise (False, pair) with the
    first atom pair (in atom order) that no state distinguishes.
    """
    ids = diagram.atom_ids()
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            if not any(s.assignment[ids[i]] != s.assignment[ids[j]] for s in states):
                return False, (ids[i], ids[j])
    return True, None


def diagram_to_dict(diagram: GreechieDiagram) -> dict:
    """Exchange form: atoms carry optional rays as [re, im] pair lists."""
    return {
        "dim": diagram.dim,
        "atoms": [
            {
                "id": atom.id,
                "ray": None
                if atom.ray is None
                else [[float(z.real), float(z.imag)] for z in atom.ray],
            }
            for atom in diagram.atoms
        ],
        "blocks": [list(block) for block in diagram.blocks],
    }


def diagram_from_dict(data: dict) -> GreechieDiagram:
    atoms = []
    for entry in data["atoms"]:
        ray = entry.get("ray")
        atoms.append(
            Atom(
                id=str(entry["id"]),
                ray=None
                if ray is None
                else np.array([complex(re, im) for re, im in ray], dtype=complex),
            )
        )
    blocks = tuple(tuple(str(a) for a in block) for block in data["blocks"])
    return GreechieDiagram(atoms=tuple(atoms), blocks=blocks, dim=int(data["dim"]))


def save_diagram(diagram: GreechieDiagram, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(diagram_to_dict(diagram), handle, indent=2)
        handle.write("\n")


def load_diagram(path) -> GreechieDiagram:
    with open(path, encoding="utf-8") as handle:
        return diagram_from_dict(json.load(handle))
