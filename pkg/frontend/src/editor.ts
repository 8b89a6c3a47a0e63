import type { ViewState } from "./state.js";
import { markDirty } from "./state.js";
import { transliterateCommit } from "./slp1.js";

// In-place segment editing: click a target segment to edit plain text,
// blur or Ctrl+Enter to commit. The commit transliterates SLP1 input when
// the mode is on; invalid words stay raw and get an inline error marker.
export function attachEditor(root: HTMLElement, state: ViewState): void {
  root.addEventListener("click", (event) => {
    const el = (event.target as HTMLElement | null)?.closest<HTMLElement>(
      ".segment.target",
    );
    if (!el || el.isContentEditable) return;
    beginEdit(el);
  });

  root.addEventListener(
    "blur",
    (event) => {
      const el = (event.target as HTMLElement | null)?.closest<HTMLElement>(
        ".segment.target",
      );
      if (el?.isContentEditable) commitEdit(el, state);
    },
    true,
  );

  root.addEventListener("keydown", (event) => {
    if (event.key !== "Enter" || !event.ctrlKey) return;
    const el = (event.target as HTMLElement | null)?.closest<HTMLElement>(
      ".segment.target",
    );
    if (el?.isContentEditable) commitEdit(el, state);
  });
}

export function beginEdit(el: HTMLElement): void {
  el.dataset.originalHtml = el.innerHTML;
  el.textContent = el.textContent ?? "";
  el.setAttribute("contenteditable", "true");
  el.classList.add("editing");
  el.focus();
}

export function commitEdit(el: HTMLElement, state: ViewState): void {
  el.removeAttribute("contenteditable");
  el.classList.remove("editing");
  const raw = el.textContent ?? "";
  const { text, errors } = transliterateCommit(raw, state.slp1Mode);
  el.textContent = text;
  el.querySelector(".slp1-error")?.remove();
  if (errors.length > 0) {
    const marker = document.createElement("span");
    marker.className = "slp1-error";
    marker.title = errors
      .map((e) => `"${e.word}": invalid SLP1 character at ${e.position}`)
      .join("\n");
    marker.textContent = " ⚠";
    el.appendChild(marker);
  }
  const segmentId = el.dataset.segmentId;
  if (segmentId && text !== el.dataset.committedText) {
    markDirty(state, segmentId, text);
    el.classList.add("dirty");
    el.dataset.committedText = text;
  }
}
