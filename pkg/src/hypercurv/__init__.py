"""Ricci-type curvatures on hypergraphs: HLRC, HFRC and HORC."""

from .curvature import CurvatureVector, hfrc_all, hfrc_edge, hlrc_all, hlrc_edge, horc_all, horc_edge, random_walk_measure
from .hypergraph import Hypergraph, NeighborhoodIndex, build_hypergraph, build_neighborhood_index, clique_expansion

__all__ = [
    "CurvatureVector",
    "Hypergraph",
    "NeighborhoodIndex",
    "build_hypergraph",
    "build_neighborhood_index",
    "clique_expansion",
    "hfrc_all",
    "hfrc_edge",
    "hlrc_all",
    "hlrc_edge",
    "horc_all",
    "horc_edge",
    "random_walk_measure",
]
