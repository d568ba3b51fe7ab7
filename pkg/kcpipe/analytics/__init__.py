from .drift import embedding_drift
from .pagerank import pagerank, ranking, select_seeds, top_k_comparison
from .projection import joint_projection, pca_project
from .report import assemble_report, reference_check

__all__ = [
    'embedding_drift', 'pagerank', 'ranking', 'select_seeds', 'top_k_comparison',
    'joint_projection', 'pca_project', 'assemble_report', 'reference_check',
]
