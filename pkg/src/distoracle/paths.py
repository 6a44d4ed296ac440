"""
Author       : wangzhen0518 wangzhen0518@126.com
Date         : 2026-09-14 10:31 +0800
LastEditors  : wangzhen0518 wangzhen0518@126.com
LastEditTime : 2026-10-02 21:08 +0800
FilePath     : paths.py
Description  : File name helpers and graph format inference.

"""

import os
from typing import Literal

GraphFormat = Literal["dimacs-gr", "edge-list"]

_EXTENSION_FORMATS: dict[str, GraphFormat] = {
    "gr": "dimacs-gr",
    "dimacs": "dimacs-gr",
    "txt": "edge-list",
    "el": "edge-list",
    "edges": "edge-list",
}


def pure_file_name(filename: str, keep_extension: bool = False) -> str:
    """Extracts the pure file name without path and extension.

    Args:
        filename: Input file path or full file name (e.g. '/path/to/road.gr' or 'road.gr')
        keep_extension: Keep the last extension.

    Returns:
        The pure file name (e.g. 'road' for '/path/to/road.gr')

    Examples:
        >>> pure_file_name('/data/bench/results.csv')
        'results'
        >>> pure_file_name('grid.tar.gz')
        'grid.tar'
    """
    filename = os.path.basename(filename)
    if not keep_extension and "." in filename:
        filename = ".".join(filename.split(".")[:-1])
    return filename


def infer_graph_format(filename: str) -> GraphFormat:
    """Guess the graph file format from its extension; unknown extensions read as an edge list.

    Examples:
        >>> infer_graph_format('USA-road-d.NY.gr')
        'dimacs-gr'
        >>> infer_graph_format('p3.txt')
        'edge-list'
    """
    ext_ = os.path.basename(filename).rsplit(".", 1)[-1].lower() if "." in os.path.basename(filename) else ""
    return _EXTENSION_FORMATS.get(ext_, "edge-list")


def sibling_path(filename: str, suffix: str) -> str:
    """Path next to `filename` sharing its pure name, e.g. ('out/bench.csv', '.fit.json') -> 'out/bench.fit.json'."""
    return os.path.join(os.path.dirname(filename), pure_file_name(filename) + suffix)
