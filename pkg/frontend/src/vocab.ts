/** Closed-vocabulary fields: values must come from the inventory. */
export const CLOSED_FIELDS = ["UPOS", "XPOS", "DEPREL"] as const;

/** Open fields accept any text. */
export const OPEN_FIELDS = ["FORM", "LEMMA", "FEATS", "HEAD", "DEPS", "MISC"] as const;

export function isClosedField(field: string): boolean {
  return (CLOSED_FIELDS as readonly string[]).includes(field);
}

/**
 * Prefix completion over the tag inventories, mirroring the service's
 * /vocab endpoint so candidates update on every keystroke without a
 * round trip. Lists are fetched from the service once per session.
 */
export class Vocabulary {
  constructor(private readonly lists: Record<string, string[]>) {}

  candidates(field: string, prefix: string): string[] {
    const list = this.lists[field];
    if (!list) return [];
    return list.filter((value) => value.startsWith(prefix)).sort();
  }

  /** The full value when the prefix is unambiguous, else null. */
  autoFill(field: string, prefix: string): string | null {
    const matches = this.candidates(field, prefix);
    return matches.length === 1 ? matches[0] : null;
  }

  isValid(field: string, value: string): boolean {
    if (!isClosedField(field)) return true;
    const list = this.lists[field];
    return list ? list.includes(value) : true;
  }

  /** The committed value for an input, or null when commit is blocked. */
  resolve(field: string, input: string): string | null {
    if (!isClosedField(field)) return input;
    if (this.isValid(field, input)) return input;
    return this.autoFill(field, input);
  }
}
