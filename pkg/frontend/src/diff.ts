// Token-level title diff over the tokens the service provides. The service
// normalizes with the same code that scores similarity, so what the reviewer
// sees highlighted is exactly what the engine compared.

export interface DiffToken {
  text: string;
  match: boolean;
}

function lcsTable(a: string[], b: string[]): number[][] {
  const table: number[][] = Array.from({ length: a.length + 1 }, () =>
    new Array<number>(b.length + 1).fill(0),
  );
  for (let i = 1; i <= a.length; i++) {
    for (let j = 1; j <= b.length; j++) {
      table[i][j] =
        a[i - 1] === b[j - 1]
          ? table[i - 1][j - 1] + 1
          : Math.max(table[i - 1][j], table[i][j - 1]);
    }
  }
  return table;
}

/** Align two token lists; unmatched tokens on either side are flagged. */
export function tokenDiff(
  cited: string[],
  candidate: string[],
): { cited: DiffToken[]; candidate: DiffToken[] } {
  const table = lcsTable(cited, candidate);
  const citedOut: DiffToken[] = [];
  const candidateOut: DiffToken[] = [];
  let i = cited.length;
  let j = candidate.length;
  while (i > 0 && j > 0) {
    if (cited[i - 1] === candidate[j - 1]) {
      citedOut.unshift({ text: cited[i - 1], match: true });
      candidateOut.unshift({ text: candidate[j - 1], match: true });
      i--;
      j--;
    } else if (table[i - 1][j] >= table[i][j - 1]) {
      citedOut.unshift({ text: cited[i - 1], match: false });
      i--;
    } else {
      candidateOut.unshift({ text: candidate[j - 1], match: false });
      j--;
    }
  }
  while (i > 0) citedOut.unshift({ text: cited[--i], match: false });
  while (j > 0) candidateOut.unshift({ text: candidate[--j], match: false });
  return { cited: citedOut, candidate: candidateOut };
}
