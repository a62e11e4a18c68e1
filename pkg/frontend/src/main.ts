import { ServiceClient } from "./api";
import { renderGraph } from "./graph";
import { helpLines, resolveShortcut } from "./shortcuts";
import { AnnotationTable } from "./table";
import { Vocabulary } from "./vocab";
import { CLOSED_FIELDS } from "./vocab";

async function loadVocabulary(client: ServiceClient): Promise<Vocabulary> {
  const lists: Record<string, string[]> = {};
  for (const field of CLOSED_FIELDS) {
    const response = await client.vocab(field, "");
    lists[field] = response.candidates;
  }
  return new Vocabulary(lists);
}

function renderTable(table: AnnotationTable, root: HTMLElement): void {
  const payload = table.payload;
  if (!payload) return;
  const columns = table.visibleColumns();
  const header = columns.map((c) => `<th>${c}</th>`).join("");
  const rows = payload.tokens
    .map((row) => {
      const cells = columns
        .map((c) => `<td data-token="${row.ID}" data-field="${c}">${row[c]}</td>`)
        .join("");
      return `<tr>${cells}</tr>`;
    })
    .join("");
  const diags = payload.diagnostics
    .map((d) => `<li class="${d.severity}">${d.code}: ${d.message}</li>`)
    .join("");
  root.innerHTML = `
    <h1>${table.title()}</h1>
    <div id="banner">${table.banner ?? ""}</div>
    <table><thead><tr>${header}</tr></thead><tbody>${rows}</tbody></table>
    <ul id="diagnostics">${diags}</ul>
    <div id="graph">${renderGraph(payload.layout, table.focus?.tokenId)}</div>
  `;
  document.title = table.title();
}

export async function boot(root: HTMLElement, base = ""): Promise<void> {
  const client = new ServiceClient(base);
  const vocab = await loadVocabulary(client);
  const table = new AnnotationTable(client, vocab);
  await table.open();
  renderTable(table, root);

  root.addEventListener("dblclick", async (event) => {
    const cell = (event.target as HTMLElement).closest("td");
    if (!cell) return;
    const tokenId = Number(cell.dataset.token);
    const field = cell.dataset.field as never;
    const input = window.prompt(`${field} for token ${tokenId}`, cell.textContent ?? "");
    if (input === null) return;
    const result = await table.commitEdit(tokenId, field, input);
    if (!result.committed && result.reason) window.alert(result.reason);
    renderTable(table, root);
  });

  document.addEventListener("keydown", async (event) => {
    const action = resolveShortcut(event);
    if (!action) return;
    event.preventDefault();
    switch (action) {
      case "save": await table.save(); break;
      case "undo": await table.undo(); break;
      case "next-sentence": await table.nextSentence(); break;
      case "prev-sentence": await table.prevSentence(); break;
      case "next-cell": table.moveFocus(1); break;
      case "prev-cell": table.moveFocus(-1); break;
      case "validate": await client.validate("ud"); break;
      case "help": window.alert(helpLines().join("\n")); break;
      default: break;
    }
    renderTable(table, root);
  });
}
