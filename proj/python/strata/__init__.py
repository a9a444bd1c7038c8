"""Recover layered architectures from dependency graphs."""

import json as _json

from ._strata import (
    ClassificationReport,
    DependencyGraph,
    EmptyResultError,
    LayeredArchitecture,
    ParseError,
    RecoveryResult,
    StrataError,
    TierDistribution,
    ValidationError,
    ViolationReport,
    aggregate_to_packages,
    classification_metrics,
    count_violations,
    cycles,
    dependency_depth,
    ego_layer,
    evolve_json,
    export_dot,
    generate,
    incremental_update,
    layering_to_csv,
    layering_to_json,
    mojo_distance,
    mojofm,
    node_impact,
    parse_graph,
    parse_layering,
    recover,
    scan_sources,
    stability,
    tier_distribution,
    to_edge_list,
    to_graph_json,
    violation_score,
)

__version__ = "0.1.0"


def evolve(manifest, **kwargs):
    """Evolution rows for a version manifest, as a list of dicts."""
    return _json.loads(evolve_json(str(manifest), **kwargs))
