from .builders import BUILDERS, get_builder
from .catalog import catalog, catalog_ids, check_builders, get_identity
from .golden import Deviation, GoldenEntry, GoldenFile, compare_with_golden, golden_from_report, load_golden, write_golden
from .models import IdentitySpec, Params, ReportEntry, RunMetadata, Status, Verdict, VerificationReport, Witness
from .report import polynomial_rows, polynomial_table, render_report
from .verifier import LINKAGES, Verifier, compare, numeric_check, verify, verify_all, verify_linkage

__all__ = [
    'BUILDERS',
    'get_builder',
    'catalog',
    'catalog_ids',
    'check_builders',
    'get_identity',
    'Deviation',
    'GoldenEntry',
    'GoldenFile',
    'compare_with_golden',
    'golden_from_report',
    'load_golden',
    'write_golden',
    'IdentitySpec',
    'Params',
    'ReportEntry',
    'RunMetadata',
    'Status',
    'Verdict',
    'VerificationReport',
    'Witness',
    'polynomial_rows',
    'polynomial_table',
    'render_report',
    'LINKAGES',
    'Verifier',
    'compare',
    'numeric_check',
    'verify',
    'verify_all',
    'verify_linkage',
]
