import type { SuggestionPayload } from "./api.js";

export interface SidebarHandlers {
  onApply: (suggestion: SuggestionPayload) => Promise<"applied" | "stale">;
}

export function showToast(root: HTMLElement, message: string): void {
  const toast = document.createElement("div");
  toast.className = "toast";
  toast.textContent = message;
  root.appendChild(toast);
  setTimeout(() => toast.remove(), 4000);
}

// Lexicon suggestion list: current vs proposed text, alternatives, and a
// one-click apply that restyles the item green on success.
export function renderSuggestions(
  container: HTMLElement,
  suggestions: SuggestionPayload[],
  handlers: SidebarHandlers,
): void {
  container.textContent = "";
  container.classList.add("suggestion-sidebar");
  if (suggestions.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No suggestions for this page.";
    container.appendChild(empty);
    return;
  }
  const list = document.createElement("ul");
  for (const suggestion of suggestions) {
    const item = document.createElement("li");
    item.className = "suggestion";
    item.dataset.segmentId = suggestion.segment_id;

    const term = document.createElement("span");
    term.className = "source-term";
    term.textContent = suggestion.source_term.join(" ");

    const change = document.createElement("span");
    const current = document.createElement("del");
    current.textContent = suggestion.current_text;
    const proposed = document.createElement("ins");
    proposed.textContent = suggestion.proposed_text;
    change.append(current, " → ", proposed);

    item.append(term, change);

    if (suggestion.alternatives.length > 1) {
      const alts = document.createElement("span");
      alts.className = "alternatives";
      alts.textContent = `also: ${suggestion.alternatives.slice(1).join(", ")}`;
      item.appendChild(alts);
    }

    const applyBtn = document.createElement("button");
    applyBtn.className = "apply-suggestion";
    applyBtn.textContent = "Apply";
    applyBtn.addEventListener("click", () => {
      void handlers.onApply(suggestion).then((result) => {
        if (result === "applied") {
          item.classList.add("applied");
          applyBtn.disabled = true;
        } else {
          item.classList.add("stale");
          item.remove();
        }
      });
    });
    item.appendChild(applyBtn);
    list.appendChild(item);
  }
  container.appendChild(list);
}
