"""Data model and file I/O for classified ensembles.

An ensemble is a finite set of unit-norm pure states, each carrying a prior
probability, partitioned into n >= 2 disjoint nonempty classes labeled 1..n.

File format (UTF-8 JSON):
    {"dim": 2, "classes": 2,
     "states": [{"amplitudes": [[re, im], ...], "prior": 0.25, "class": 1},
                ...]}
Amplitudes are [real, imaginary] pairs. Unknown fields are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-6
PRIOR_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        object.__setattr__(self, "amplitudes", amps)
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise ValueError("state not normalized")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class EnsembleMember:
    state: PureState
    prior: float
    class_label: int


@dataclass(frozen=True)
class ClassifiedEnsemble:
    """States with priors, partitioned into classes 1..n.

    Invariants checked on construction: priors positive and summing to 1,
    class labels contiguous in 1..n with every class nonempty, n >= 2, and
    all states sharing one dimension.
    """

    dim: int
    n_classes: int
    members: tuple[EnsembleMember, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        if self.n_classes < 2:
            raise ValueError("n >= 2 required")
        if not self.members:
            raise ValueError("empty class")
        for m in self.members:
            if m.state.dim != self.dim:
                raise ValueError("dimension mismatch")
            if not m.prior > 0.0:
                raise ValueError("priors do not sum to 1")
            if not isinstance(m.class_label, int) or not (1 <= m.class_label <= self.n_classes):
                raise ValueError("class label out of range")
        if abs(sum(m.prior for m in self.members) - 1.0) > PRIOR_SUM_TOL:
            raise ValueError("priors do not sum to 1")
        present = {m.class_label for m in self.members}
        if present != set(range(1, self.n_classes + 1)):
            raise ValueError("empty class")

    @property
    def size(self) -> int:
        return len(self.members)

    def class_size(self, label: int) -> int:
        return sum(1 for m in self.members if m.class_label == label)

    def states_in_class(self, label: int) -> list[np.ndarray]:
        return [m.state.amplitudes for m in self.members if m.class_label == label]

    def states_outside_class(self, label: int) -> list[np.ndarray]:
        return [m.state.amplitudes for m in self.members if m.class_label != label]


def _require_keys(obj: dict, allowed: set[str], required: set[str]) -> None:
    keys = set(obj)
    if not required <= keys or not keys <= allowed:
        raise ValueError("parse error")


def _parse_amplitudes(raw: object, dim: int) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim:
        raise ValueError("dimension mismatch")
    amps = np.zeros(dim, dtype=complex)
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ValueError("parse error")
        amps[i] = complex(pair[0], pair[1])
    return amps


def parse_ensemble(text: str | bytes) -> ClassifiedEnsemble:
    """Parse and validate the JSON ensemble format.

    Malformed syntax raises ValueError("parse error at line L"); invariant
    violations raise the named violation. State norms deviating from 1 by
    more than 1e-6 are rejected, never silently repaired.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"parse error at line {exc.lineno}") from exc
    return ensemble_from_doc(doc)


def ensemble_from_doc(doc: object) -> ClassifiedEnsemble:
    """Build a validated ensemble from already-decoded JSON data."""
    if not isinstance(doc, dict):
        raise ValueError("parse error")
    _require_keys(doc, {"dim", "classes", "states"}, {"dim", "classes", "states"})
    dim, n, raw_states = doc["dim"], doc["classes"], doc["states"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValueError("parse error")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("parse error")
    if n < 2:
        raise ValueError("n >= 2 required")
    if not isinstance(raw_states, list) or not raw_states:
        raise ValueError("parse error")
    members = []
    for raw in raw_states:
        if not isinstance(raw, dict):
            raise ValueError("parse error")
        _require_keys(raw, {"amplitudes", "prior", "class"}, {"amplitudes", "prior", "class"})
        amps = _parse_amplitudes(raw["amplitudes"], dim)
        prior = raw["prior"]
        label = raw["class"]
        if not isinstance(prior, (int, float)) or isinstance(prior, bool):
            raise ValueError("parse error")
        if not isinstance(label, int) or isinstance(label, bool):
            raise ValueError("parse error")
        if not 1 <= label <= n:
            raise ValueError("parse error")
        members.append(
            EnsembleMember(state=PureState(amps), prior=float(prior), class_label=label)
        )
    return ClassifiedEnsemble(dim=dim, n_classes=n, members=tuple(members))


def ensemble_to_doc(e: ClassifiedEnsemble) -> dict:
    return {
        "dim": e.dim,
        "classes": e.n_classes,
        "states": [
            {
                "amplitudes": [[float(a.real), float(a.imag)] for a in m.state.amplitudes],
                "prior": m.prior,
                "class": m.class_label,
            }
            for m in e.members
        ],
    }


def serialize_ensemble(e: ClassifiedEnsemble) -> str:
    """Inverse of parse_ensemble; amplitudes written as [re, im] pairs."""
    return json.dumps(ensemble_to_doc(e))


def gram_matrix(e: ClassifiedEnsemble) -> np.ndarray:
    """Matrix of pairwise inner products G[a][b] = <psi_a|psi_b>.

    Hermitian by construction: the lower triangle is set to the conjugate of
    the upper.
    """
    vecs = [m.state.amplitudes for m in e.members]
    size = len(vecs)
    g = np.eye(size, dtype=complex)
    for a in range(size):
        g[a, a] = np.vdot(vecs[a], vecs[a])
        for b in range(a + 1, size):
            g[a, b] = np.vdot(vecs[a], vecs[b])
            g[b, a] = np.conj(g[a, b])
    return g
