import logging
from typing import Dict, List, Optional

import numpy as np

from boostfuse.errors import (
    ArgumentError,
    DegenerateTargetError,
    EmptySelectionError,
)
from boostfuse.features.pearson import (
    STRONG_THRESHOLD,
    classify_strength,
    try_pearson,
)
from boostfuse.ingest.matrix import DataMatrix
from boostfuse.schema.report.correlation import (
    CorrelationEntry,
    CorrelationReport,
    SecondOrderLink,
    Strength,
)
from boostfuse.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


def correlate_with_target(matrix: DataMatrix) -> CorrelationReport:
    if matrix.n_rows < 2:
        raise ArgumentError('Correlation needs at least 2 rows')
    if np.ptp(matrix.target) == 0:
        raise DegenerateTargetError(
            f'Target {matrix.target_name!r} is constant'
        )

    def correlate(j: int) -> CorrelationEntry:
        name = matrix.feature_names[j]
        r = try_pearson(matrix.rows[:, j], matrix.target)
        if r is None:
            logger.warning(
                'Feature %r is constant, excluded from ranking', name
            )
            return CorrelationEntry(
                feature=name, n=matrix.n_rows, degenerate=True
            )
        return CorrelationEntry(
            feature=name, r=r, strength=classify_strength(r), n=matrix.n_rows
        )

    entries = ordered_map(correlate, range(matrix.n_features))
    return CorrelationReport(target=matrix.target_name, entries=entries)


def second_order_analysis(
    matrix: DataMatrix, report: CorrelationReport
) -> CorrelationReport:
    """Cross-correlate every Weak feature with every Strong feature.

    A Weak feature whose |r| against some Strong feature exceeds the strong
    threshold is flagged as indirectly relevant.
    """
    strong = report.with_strength(Strength.strong)
    second_order: Dict[str, List[SecondOrderLink]] = {}
    entries = []
    for entry in report.entries:
        if entry.strength is not Strength.weak:
            entries.append(entry)
            continue

        weak_column = matrix.column(entry.feature)
        links = [
            SecondOrderLink(
                feature=other.feature,
                r=try_pearson(weak_column, matrix.column(other.feature)),
            )
            for other in strong
        ]
        second_order[entry.feature] = links
        indirect = any(
            link.r is not None and abs(link.r) > STRONG_THRESHOLD
            for link in links
        )
        entries.append(
            entry.model_copy(update={'indirectly_relevant': indirect})
        )

    return CorrelationReport(
        target=report.target, entries=entries, second_order=second_order
    )


def rank_entries(entries: List[CorrelationEntry]) -> List[CorrelationEntry]:
    # |r| descending, ties by name; degenerate entries last
    return sorted(
        entries,
        key=lambda e: (e.r is None, -abs(e.r or 0.0), e.feature),
    )


def select_features(report: CorrelationReport, k: int) -> List[str]:
    if k < 1:
        raise ArgumentError(f'k must be >= 1, got {k}')

    direct = rank_entries(
        [
            e
            for e in report.entries
            if e.strength in (Strength.strong, Strength.moderate)
        ]
    )
    indirect = rank_entries(
        [
            e
            for e in report.entries
            if e.strength is Strength.weak and e.indirectly_relevant
        ]
    )
    eligible = [entry.feature for entry in direct + indirect]
    if not eligible:
        raise EmptySelectionError(
            f'No feature is eligible for target {report.target!r}'
        )

    selected = eligible[:k]
    logger.info('Selected %d features: %s', len(selected), ', '.join(selected))
    return selected


def correlation_matrix(
    matrix: DataMatrix,
) -> Dict[str, Dict[str, Optional[float]]]:
    """Pairwise Pearson r over feature columns and the target."""
    names = [*matrix.feature_names, matrix.target_name]
    table: Dict[str, Dict[str, Optional[float]]] = {name: {} for name in names}
    for i, left in enumerate(names):
        for right in names[i:]:
            r = (
                try_pearson(matrix.column(left), matrix.column(right))
                if left != right
                else (1.0 if np.ptp(matrix.column(left)) > 0 else None)
            )
            table[left][right] = r
            table[right][left] = r
    return table
