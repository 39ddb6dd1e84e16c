import re
import unicodedata

_SPACES = re.compile(r"\s+")


def _keep(ch):
    if ch == "-":
        return True
    cat = unicodedata.category(ch)
    # P*: punctuation, S*: symbols, Mn: combining marks left over from NFKD
    return not (cat[0] in "PS" or cat == "Mn")


def normalize_title(raw):
    """Canonical form of a journal title used for all lookups.

    Uppercase, diacritics folded to their base letters, ``&`` spelled as
    ``AND``, punctuation other than ``-`` removed, whitespace collapsed.

    >>> normalize_title("J. Phys. Chem.  B")
    'J PHYS CHEM B'
    >>> normalize_title("Läkartidningen")
    'LAKARTIDNINGEN'
    """
    s = unicodedata.normalize("NFKD", raw.upper().replace("&", " AND "))
    s = "".join(ch for ch in s if _keep(ch))
    s = unicodedata.normalize("NFKD", s.upper())
    s = "".join(ch for ch in s if _keep(ch))
    return _SPACES.sub(" ", s).strip()
