import type { PreviewReportPayload, Rule, Scope } from "./api.js";
import { SCOPES } from "./state.js";

export interface DialogHandlers {
  onPreview: (rules: Rule[], scope: Scope) => Promise<PreviewReportPayload>;
  onApply: (rules: Rule[], scope: Scope) => Promise<number>;
  onSkip?: () => void;
}

const SCOPE_LABELS: Record<Scope, string> = {
  CurrentPage: "Current page",
  UneditedPages: "Unedited pages",
  AllPages: "All pages",
};

function renderPreview(container: HTMLElement, report: PreviewReportPayload): void {
  container.textContent = "";
  container.classList.add("preview-report");
  const total = document.createElement("p");
  total.className = "preview-total";
  total.textContent = `${report.total_count} replacement${report.total_count === 1 ? "" : "s"}`;
  container.appendChild(total);
  for (const page of report.pages) {
    const section = document.createElement("div");
    section.className = "preview-page";
    section.dataset.page = String(page.page_index);
    const heading = document.createElement("h4");
    heading.textContent = `Page ${page.page_index} (${page.occurrences.length})`;
    section.appendChild(heading);
    const list = document.createElement("ul");
    for (const occ of page.occurrences) {
      const item = document.createElement("li");
      item.className = "preview-occurrence";
      item.dataset.segmentId = occ.segment_id;
      const before = document.createElement("del");
      before.textContent = occ.before_text;
      const after = document.createElement("ins");
      after.textContent = occ.after_text;
      item.append(before, " → ", after);
      list.appendChild(item);
    }
    section.appendChild(list);
    container.appendChild(section);
  }
}

// Fig-2-style save dialog: the rule list, the three scope choices, a
// Preview pane, and Apply/Skip. Returns the dialog element.
export function openReplacementDialog(
  root: HTMLElement,
  rules: Rule[],
  selectedScope: Scope,
  handlers: DialogHandlers,
): HTMLElement {
  closeReplacementDialog(root);
  const overlay = document.createElement("div");
  overlay.className = "dialog-overlay";
  const dialog = document.createElement("div");
  dialog.className = "replacement-dialog";
  dialog.setAttribute("role", "dialog");

  const title = document.createElement("h3");
  title.textContent = "Edits on this page";
  dialog.appendChild(title);

  const ruleList = document.createElement("ul");
  ruleList.className = "rule-list";
  for (const rule of rules) {
    const item = document.createElement("li");
    item.className = "rule";
    item.dataset.ruleId = rule.rule_id;
    const find = document.createElement("del");
    find.textContent = rule.find.join(" ");
    const replace = document.createElement("ins");
    replace.textContent = rule.replace;
    item.append(find, " → ", replace);
    ruleList.appendChild(item);
  }
  dialog.appendChild(ruleList);

  const scopeBox = document.createElement("fieldset");
  scopeBox.className = "scope-choices";
  const legend = document.createElement("legend");
  legend.textContent = "Replace in";
  scopeBox.appendChild(legend);
  for (const scope of SCOPES) {
    const label = document.createElement("label");
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "scope";
    radio.value = scope;
    radio.checked = scope === selectedScope;
    label.appendChild(radio);
    label.append(` ${SCOPE_LABELS[scope]}`);
    scopeBox.appendChild(label);
  }
  dialog.appendChild(scopeBox);

  const previewContainer = document.createElement("div");
  previewContainer.className = "preview-container";
  dialog.appendChild(previewContainer);

  const currentScope = (): Scope => {
    const checked = dialog.querySelector<HTMLInputElement>("input[name=scope]:checked");
    return (checked?.value as Scope) ?? selectedScope;
  };

  const buttons = document.createElement("div");
  buttons.className = "dialog-buttons";

  const previewBtn = document.createElement("button");
  previewBtn.className = "preview-btn";
  previewBtn.textContent = "Preview";
  previewBtn.addEventListener("click", () => {
    void handlers.onPreview(rules, currentScope()).then((report) => {
      renderPreview(previewContainer, report);
    });
  });

  const applyBtn = document.createElement("button");
  applyBtn.className = "apply-btn";
  applyBtn.textContent = "Apply";
  applyBtn.addEventListener("click", () => {
    void handlers.onApply(rules, currentScope()).then((count) => {
      const note = document.createElement("p");
      note.className = "apply-result";
      note.textContent = `${count} replacement${count === 1 ? "" : "s"} applied`;
      dialog.appendChild(note);
      closeReplacementDialog(root);
    });
  });

  const skipBtn = document.createElement("button");
  skipBtn.className = "skip-btn";
  skipBtn.textContent = "Skip";
  skipBtn.addEventListener("click", () => {
    handlers.onSkip?.();
    closeReplacementDialog(root);
  });

  buttons.append(previewBtn, applyBtn, skipBtn);
  dialog.appendChild(buttons);
  overlay.appendChild(dialog);
  root.appendChild(overlay);
  return dialog;
}

export function closeReplacementDialog(root: HTMLElement): void {
  root.querySelector(".dialog-overlay")?.remove();
}
