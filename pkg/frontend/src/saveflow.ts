import { ApiClient, ApiError, type Rule, type Scope } from "./api.js";
import { openReplacementDialog } from "./dialog.js";
import type { ViewState } from "./state.js";
import { clearDirty } from "./state.js";

export interface SaveFlowCallbacks {
  reloadPage: (notice?: string) => Promise<void> | void;
  onApplied?: (count: number) => void;
}

// The save flow: push dirty segments, save the page, and when the save
// returns rules open the replacement dialog. A 409 anywhere means another
// session moved the project forward: reload with a merge notice.
export async function runSaveFlow(
  api: ApiClient,
  state: ViewState,
  dialogRoot: HTMLElement,
  callbacks: SaveFlowCallbacks,
): Promise<Rule[]> {
  try {
    for (const [segmentId, text] of state.dirty) {
      const result = await api.putSegment(
        state.projectId,
        state.currentPage,
        segmentId,
        text,
        state.version,
      );
      state.version = result.version;
    }
    clearDirty(state);
    const saved = await api.savePage(state.projectId, state.currentPage);
    state.version = saved.version;
    state.pendingRules = saved.rules;
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      state.pendingRules = [];
      await callbacks.reloadPage("Page changed in another session; reloaded.");
      return [];
    }
    throw err;
  }

  if (state.pendingRules.length > 0) {
    openReplacementDialog(dialogRoot, state.pendingRules, state.selectedScope, {
      onPreview: (rules, scope: Scope) =>
        api.previewReplace(state.projectId, rules, scope, state.currentPage),
      onApply: async (rules, scope: Scope) => {
        const result = await api.applyReplace(
          state.projectId,
          rules,
          scope,
          state.currentPage,
        );
        state.version = result.version;
        state.pendingRules = [];
        callbacks.onApplied?.(result.applied_count);
        await callbacks.reloadPage();
        return result.applied_count;
      },
      onSkip: () => {
        state.pendingRules = [];
      },
    });
  }
  return state.pendingRules;
}
