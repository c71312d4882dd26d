"""Survey outline planning: fixed framing sections around cluster sections."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from litpipe.clustering.report import ClusterModel
from litpipe.errors import InvalidInputError

KIND_ABSTRACT = "abstract"
KIND_INTRODUCTION = "introduction"
KIND_CLUSTER = "cluster-section"
KIND_CROSS_CUTTING = "cross-cutting"
KIND_FUTURE = "future-directions"
KIND_CONCLUSION = "conclusion"


@dataclass(frozen=True)
class Section:
    kind: str
    title: str
    cluster_index: Optional[int] = None


@dataclass(frozen=True)
class Outline:
    sections: tuple

    def __post_init__(self):
        kinds = [s.kind for s in self.sections]
        for required in (KIND_ABSTRACT, KIND_INTRODUCTION, KIND_CONCLUSION):
            if kinds.count(required) != 1:
                raise InvalidInputError(f"outline needs exactly one {required} section")

    def __len__(self) -> int:
        return len(self.sections)

    def cluster_sections(self) -> List[Section]:
        return [s for s in self.sections if s.kind == KIND_CLUSTER]


def plan_outline(model: ClusterModel) -> Outline:
    """One section per cluster (largest first, ties by index) plus framing."""
    if model.k < 1:
        raise InvalidInputError("at least one cluster required")
    ordered = sorted(model.profiles, key=lambda p: (-p.size, p.index))
    sections = [
        Section(KIND_ABSTRACT, "Abstract"),
        Section(KIND_INTRODUCTION, "Introduction"),
    ]
    sections += [Section(KIND_CLUSTER, p.name, cluster_index=p.index) for p in ordered]
    sections += [
        Section(KIND_CROSS_CUTTING, "Cross-Cutting Themes"),
        Section(KIND_FUTURE, "Future Directions"),
        Section(KIND_CONCLUSION, "Conclusion"),
    ]
    return Outline(sections=tuple(sections))
