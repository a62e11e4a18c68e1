"""Turkish suffix morphology: vowel harmony and -ki host analysis.

Covers exactly the suffix phenomena the transform rules need: surface
resolution of the harmonizing archiphonemes -lI and -sIz, and shallow
analysis of the residue left when a -ki suffix is stripped (locative or
genitive case, optional third-person possessive, personal pronouns).
"""

from __future__ import annotations

from dataclasses import dataclass

VOWELS = "aeıioöuü"

# Last stem vowel -> surface vowel of a high-vowel (I) suffix slot.
_I_HARMONY = {
    "a": "ı", "ı": "ı",
    "e": "i", "i": "i",
    "o": "u", "u": "u",
    "ö": "ü", "ü": "ü",
}

SUFFIX_TEMPLATES = {"lI": ("l", "I"), "sIz": ("s", "I", "z")}


class NoSurfaceError(ValueError):
    """Raised when a stem has no vowel to harmonize against."""


def turkish_lower(text):
    """Lowercase with Turkish dotted/dotless i handling."""
    return text.replace("İ", "i").replace("I", "ı").lower()


def last_vowel(stem):
    for ch in reversed(turkish_lower(stem)):
        if ch in VOWELS:
            return ch
    return None


def harmony_surface(suffix, stem):
    """Resolve an archiphoneme suffix (-lI, -sIz) against a stem.

    The I slot takes the harmony class of the last stem vowel.
    """
    if suffix not in SUFFIX_TEMPLATES:
        raise ValueError(f"unknown suffix archiphoneme {suffix!r}")
    vowel = last_vowel(stem)
    if vowel is None:
        raise NoSurfaceError(f"stem {stem!r} has no vowel")
    out = []
    for slot in SUFFIX_TEMPLATES[suffix]:
        out.append(_I_HARMONY[vowel] if slot == "I" else slot)
    return "".join(out)


# Personal pronouns in the genitive: surface -> (lemma, number, person).
GENITIVE_PRONOUNS = {
    "benim": ("ben", "Sing", "1"),
    "senin": ("sen", "Sing", "2"),
    "onun": ("o", "Sing", "3"),
    "bizim": ("biz", "Plur", "1"),
    "sizin": ("siz", "Plur", "2"),
    "onların": ("onlar", "Plur", "3"),
}

_LOCATIVE_ENDINGS = ("da", "de", "ta", "te")
_GENITIVE_ENDINGS = ("nın", "nin", "nun", "nün", "ın", "in", "un", "ün")
_HIGH_VOWELS = "ıiuü"


@dataclass(frozen=True)
class HostAnalysis:
    """Shallow analysis of a -ki host residue."""

    case: str                      # "Loc" or "Gen"
    lemma: str
    feature_pairs: tuple           # ready-to-use FEATS (key, value) pairs
    xpos: str = ""
    pronominal: bool = False


def _strip_possessive(stem):
    """Strip a 3rd-person possessive (-(s)I(n)) if present; None otherwise."""
    low = turkish_lower(stem)
    if len(low) >= 3 and low.endswith("n") and low[-2] in _HIGH_VOWELS:
        core = stem[:-2]
    elif len(low) >= 2 and low[-1] in _HIGH_VOWELS:
        core = stem[:-1]
    else:
        return None
    if core and turkish_lower(core)[-1] == "s" and len(core) > 1 \
            and turkish_lower(core)[-2] in VOWELS:
        core = core[:-1]
    return core if len(core) >= 2 else None


def analyze_ki_host(residue):
    """Analyze the residue of a -ki form; None if no case morphology found."""
    low = turkish_lower(residue)
    if low in GENITIVE_PRONOUNS:
        lemma, number, person = GENITIVE_PRONOUNS[low]
        pairs = (
            ("Case", "Gen"),
            ("Number", number),
            ("Person", person),
            ("PronType", "Prs"),
        )
        return HostAnalysis("Gen", lemma, pairs, xpos="PERS", pronominal=True)

    for ending in _LOCATIVE_ENDINGS:
        if low.endswith(ending) and len(low) > len(ending) + 1:
            stem = residue[: -len(ending)]
            pairs = [("Case", "Loc"), ("Number", "Sing"), ("Person", "3")]
            possessed = _strip_possessive(stem)
            if possessed is not None:
                stem = possessed
                pairs += [("Number[psor]", "Sing"), ("Person[psor]", "3")]
            if len(stem) < 2 or last_vowel(stem) is None:
                return None
            return HostAnalysis("Loc", turkish_lower(stem), tuple(sorted(pairs)))

    for ending in _GENITIVE_ENDINGS:
        if low.endswith(ending) and len(low) > len(ending) + 1:
            stem = residue[: -len(ending)]
            if len(stem) < 2 or last_vowel(stem) is None:
                return None
            pairs = (("Case", "Gen"), ("Number", "Sing"), ("Person", "3"))
            return HostAnalysis("Gen", turkish_lower(stem), pairs)

    return None


def has_case_suffix(residue):
    """Pattern-level check: does the residue end in locative or genitive?"""
    low = turkish_lower(residue)
    return any(
        low.endswith(e) and len(low) > len(e) + 1
        for e in _LOCATIVE_ENDINGS + _GENITIVE_ENDINGS
    ) or low in GENITIVE_PRONOUNS
