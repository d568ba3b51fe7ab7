from .graph import EdgeRecord, KnowledgeGraph, NodeRecord
from .strength import ClosureStats, PathStrength, StrengthModel
from .settings import (
    PageRankConfig,
    PipelineConfig,
    SageConfig,
    SkipGramConfig,
    SyntheticConfig,
    WalkConfig,
)
from .embedding import EmbeddingMatrix, FeatureMatrix, LayerWeights, SampledNeighborhoods, WalkCorpus
from .report import (
    DriftReport,
    IngestReport,
    PageRankResult,
    Projection2D,
    RankingComparison,
    RunManifest,
)

__all__ = [
    'EdgeRecord', 'KnowledgeGraph', 'NodeRecord',
    'ClosureStats', 'PathStrength', 'StrengthModel',
    'PageRankConfig', 'PipelineConfig', 'SageConfig', 'SkipGramConfig', 'SyntheticConfig',
    'WalkConfig',
    'EmbeddingMatrix', 'FeatureMatrix', 'LayerWeights', 'SampledNeighborhoods', 'WalkCorpus',
    'DriftReport', 'IngestReport', 'PageRankResult', 'Projection2D', 'RankingComparison',
    'RunManifest',
]
