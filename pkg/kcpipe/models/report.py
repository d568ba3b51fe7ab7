from dataclasses import dataclass, field

import numpy as np


@dataclass
class IngestReport:
    total_lines: int = 0
    valid: int = 0
    blank: int = 0
    malformed: int = 0
    self_loops: int = 0
    duplicates: int = 0
    distinct_pairs: int = 0
    people: int = 0
    departments: int = 0
    unknown_metadata_people: int = 0
    contact_edges: int = 0
    events: int = 0

    @property
    def skipped(self):
        return self.blank + self.malformed + self.self_loops + self.duplicates

    def to_dict(self):
        return {
            'total_lines': self.total_lines,
            'valid': self.valid,
            'skipped': self.skipped,
            'blank': self.blank,
            'malformed': self.malformed,
            'self_loops': self.self_loops,
            'duplicates': self.duplicates,
            'events': self.events,
            'distinct_pairs': self.distinct_pairs,
            'contact_edges': self.contact_edges,
            'people': self.people,
            'departments': self.departments,
            'unknown_metadata_people': self.unknown_metadata_people,
        }


@dataclass
class PageRankResult:
    scores: dict
    converged: bool
    iterations: int
    normalization: str

    def to_dict(self):
        return {
            'converged': self.converged,
            'iterations': self.iterations,
            'normalization': self.normalization,
        }


@dataclass
class RankingComparison:
    top_raw: list
    top_kc: list
    displacement: dict
    overlap: float
    k: int

    def table(self, names=None):
        """Rank-aligned rows in the shape of a side-by-side top-k table."""
        names = names or {}
        rows = []
        for rank in range(self.k):
            raw_id, raw_score = self.top_raw[rank]
            kc_id, kc_score = self.top_kc[rank]
            rows.append({
                'rank': rank + 1,
                'raw_node': names.get(raw_id, raw_id),
                'raw_score': raw_score,
                'kc_node': names.get(kc_id, kc_id),
                'kc_score': kc_score,
            })
        return rows

    def to_dict(self, names=None):
        moved = {str(v): d for v, d in sorted(self.displacement.items()) if d}
        return {
            'k': self.k,
            'jaccard_overlap': self.overlap,
            'table': self.table(names),
            'max_displacement': max((abs(d) for d in self.displacement.values()), default=0),
            'displacement': moved,
        }


@dataclass
class DriftReport:
    node_ids: list
    distances: np.ndarray
    generator: str
    aligned: bool = False

    @property
    def mean(self):
        return float(np.mean(self.distances)) if len(self.distances) else 0.0

    @property
    def median(self):
        return float(np.median(self.distances)) if len(self.distances) else 0.0

    @property
    def max(self):
        return float(np.max(self.distances)) if len(self.distances) else 0.0

    def to_dict(self):
        return {
            'generator': self.generator,
            'aligned': self.aligned,
            'nodes': len(self.node_ids),
            'mean': self.mean,
            'median': self.median,
            'max': self.max,
        }


@dataclass
class Projection2D:
    coordinates: np.ndarray
    explained_variance: list
    degenerate: bool = False

    def to_dict(self):
        return {
            'explained_variance': list(self.explained_variance),
            'degenerate': self.degenerate,
        }


@dataclass
class RunManifest:
    config: dict
    version: str
    stages: dict = field(default_factory=dict)
    files: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'version': self.version,
            'config': self.config,
            'stages': {k: self.stages[k] for k in sorted(self.stages)},
            'files': {k: self.files[k] for k in sorted(self.files)},
        }
