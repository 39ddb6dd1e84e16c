"""On-disk workspace: the two ledgers, generated outputs, and the writer lock."""
import os
import re
import tempfile
from contextlib import contextmanager
from pathlib import Path

from .diversity import read_diversity_ledger, write_diversity_ledger
from .errors import WorkspaceLockedError
from .matrix import PortfolioMatrix, read_matrix_ledger, write_matrix_ledger

ENV_WORKSPACE = "PORTFOLIO_WORKSPACE"
MATRIX_LEDGER = "matrix.tsv"
DIVERSITY_LEDGER = "rao.tsv"
DEFAULT_BASEMAP = "basemap.tsv"
LOCK_NAME = ".portfolio.lock"
MANIFEST_NAME = ".portfolio-outputs"


def resolve_root(flag=None):
    """Workspace root: ``--workspace`` flag, then $PORTFOLIO_WORKSPACE, then the cwd."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_WORKSPACE)
    if env:
        return Path(env)
    return Path.cwd()


def safe_filename(label):
    return re.sub(r'[\\/:*?"<>|\x00-\x1f]', "_", label) or "_"


def _atomic_write(path, write):
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


class Workspace:
    def __init__(self, root, basemap_path=None):
        self.root = Path(root)
        self.basemap_path = Path(basemap_path) if basemap_path else self.root / DEFAULT_BASEMAP
        self.matrix_ledger = self.root / MATRIX_LEDGER
        self.diversity_ledger = self.root / DIVERSITY_LEDGER
        self.lock_path = self.root / LOCK_NAME
        self.manifest_path = self.root / MANIFEST_NAME

    @contextmanager
    def locked(self):
        """Exclusive writer lock; a second holder fails fast instead of waiting."""
        self.root.mkdir(parents=True, exist_ok=True)
        try:
            fd = os.open(self.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise WorkspaceLockedError(
                f"workspace {self.root} is locked by another run "
                f"(remove {self.lock_path} if no other run is active)"
            ) from None
        try:
            os.write(fd, str(os.getpid()).encode())
            os.close(fd)
            yield self
        finally:
            try:
                os.unlink(self.lock_path)
            except FileNotFoundError:
                pass

    # ledgers

    def load_matrix(self, journal_ids=None):
        if not self.matrix_ledger.exists():
            return None
        with open(self.matrix_ledger, encoding="utf-8", newline="") as fh:
            return read_matrix_ledger(fh, journal_ids)

    def save_matrix(self, matrix: PortfolioMatrix):
        _atomic_write(self.matrix_ledger, lambda fh: write_matrix_ledger(matrix, fh))

    def load_reports(self):
        if not self.diversity_ledger.exists():
            return []
        with open(self.diversity_ledger, encoding="utf-8", newline="") as fh:
            return read_diversity_ledger(fh)

    def save_reports(self, reports):
        _atomic_write(self.diversity_ledger, lambda fh: write_diversity_ledger(reports, fh))

    def upsert_report(self, report):
        reports = self.load_reports()
        for i, r in enumerate(reports):
            if r.unit_label == report.unit_label:
                reports[i] = report
                break
        else:
            reports.append(report)
        self.save_reports(reports)
        return reports

    # generated outputs

    def outputs(self):
        if not self.manifest_path.exists():
            return []
        return [line for line in self.manifest_path.read_text(encoding="utf-8").splitlines() if line]

    def write_output(self, name, write):
        """Write a generated file in the workspace and remember it for :meth:`reset`."""
        path = self.root / name
        _atomic_write(path, write)
        known = self.outputs()
        if name not in known:
            with open(self.manifest_path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(name + "\n")
        return path

    def reset(self):
        """Delete both ledgers and every recorded output. The base map is never touched."""
        removed = []
        for name in self.outputs() + [MATRIX_LEDGER, DIVERSITY_LEDGER, MANIFEST_NAME]:
            path = self.root / name
            if path.resolve() == self.basemap_path.resolve():
                continue
            try:
                path.unlink()
                removed.append(name)
            except FileNotFoundError:
                pass
        return removed
