"""Journal-portfolio overlays, Rao-Stirling diversity and unit similarity matrices
from Web-of-Science "Analyze Results" exports."""
from .basemap import BaseMap, JournalEntry, compute_diameter, disparity, load_basemap, read_basemap
from .diversity import DiversityReport, diversity_report, rao_stirling, true_diversity
from .errors import DegenerateMapError, DomainError, ParseError, PortfolioError, UnknownJournalError
from .export import (OverlayMap, build_overlay, read_pajek, write_csv_matrix, write_pajek,
                     write_ucinet_dl, write_vos_map, write_vos_network)
from .ingest import PortfolioDistribution, RawPortfolio, match_portfolio, parse_analyze_export
from .matrix import PortfolioMatrix, SimilarityMatrix, cooccurrence_matrix, cosine_matrix, upsert_unit
from .textnorm import normalize_title

__version__ = "0.1.0"
