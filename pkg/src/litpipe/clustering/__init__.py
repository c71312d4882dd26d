from litpipe.clustering.kmeans import ClusterAssignment, kmeans
from litpipe.clustering.metrics import (
    ClusterDiagnostics,
    all_confidences,
    confidence,
    intercluster_strength,
    silhouette,
    strength_label,
    validity_indices,
)
from litpipe.clustering.select_k import KSelectionResult, select_k
from litpipe.clustering.tfidf import name_cluster, terms_of, tfidf_terms, tokenize
from litpipe.clustering.report import (
    ClusterModel,
    ClusterProfile,
    ClusterRelationship,
    build_cluster_report,
    build_profiles,
    build_relationships,
    cluster_corpus,
)

__all__ = [
    "ClusterAssignment",
    "kmeans",
    "ClusterDiagnostics",
    "silhouette",
    "validity_indices",
    "confidence",
    "all_confidences",
    "intercluster_strength",
    "strength_label",
    "KSelectionResult",
    "select_k",
    "tfidf_terms",
    "tokenize",
    "terms_of",
    "name_cluster",
    "ClusterModel",
    "ClusterProfile",
    "ClusterRelationship",
    "cluster_corpus",
    "build_profiles",
    "build_relationships",
    "build_cluster_report",
]
