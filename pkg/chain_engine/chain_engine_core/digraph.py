"""chain_engine/chain_engine_core/digraph.py - Sparse directed-graph helpers.
INPUT: scipy CSR adjacency | OUTPUT: SCC labels, recurrence masks, reachability
"""
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


def to_csr(n_nodes: int, src: np.ndarray, dst: np.ndarray) -> sparse.csr_matrix:
    """Boolean CSR from edge arrays; duplicate edges collapse."""
    src = np.asarray(src, dtype=np.int64); dst = np.asarray(dst, dtype=np.int64)
    g = sparse.csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n_nodes, n_nodes))
    g.sum_duplicates()
    g.data[:] = 1
    return g


def scc_labels(g: sparse.csr_matrix) -> np.ndarray:
    _, labels = csgraph.connected_components(g, directed=True, connection="strong")
    return labels


def recurrent_mask(g: sparse.csr_matrix, labels: np.ndarray = None) -> np.ndarray:
    """Nodes on a directed cycle: nontrivial SCC or a self-loop."""
    labels = scc_labels(g) if labels is None else labels
    sizes = np.bincount(labels)
    loops = np.zeros(g.shape[0], dtype=bool)
    loops[g.diagonal().nonzero()[0]] = True
    return (sizes[labels] >= 2) | loops


def reachable(g: sparse.csr_matrix, start: int) -> np.ndarray:
    """Mask of nodes reachable from start by a path of length >= 1."""
    seen = np.zeros(g.shape[0], dtype=bool)
    seen[csgraph.breadth_first_order(g, int(start), directed=True, return_predecessors=False)] = True
    preds = g.tocsc()[:, int(start)].nonzero()[0]
    seen[start] = bool(np.any(seen[preds]))
    return seen


def refine_partition(*label_arrays: np.ndarray) -> np.ndarray:
    """Common refinement of several labelings; ids renumbered by first occurrence."""
    keys = np.column_stack(label_arrays) if len(label_arrays) > 1 else np.asarray(label_arrays[0])[:, None]
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order); rank[order] = np.arange(order.size)
    return rank[inverse]
