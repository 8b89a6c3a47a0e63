import type { Rule, Scope } from "./api.js";

export const SCOPES: readonly Scope[] = ["CurrentPage", "UneditedPages", "AllPages"];

// Session-local view state. Pending rules are populated only from a save
// response that returned a non-empty rule list; the dialog reads them.
export interface ViewState {
  projectId: string;
  currentPage: number;
  version: number;
  role: string;
  hoverSegmentId: string | null;
  pendingRules: Rule[];
  selectedScope: Scope;
  dirty: Map<string, string>; // segment id -> edited text awaiting PUT
  slp1Mode: boolean;
}

export function initialState(projectId: string, role: string): ViewState {
  return {
    projectId,
    currentPage: 1,
    version: 0,
    role,
    hoverSegmentId: null,
    pendingRules: [],
    selectedScope: "UneditedPages",
    dirty: new Map(),
    slp1Mode: false,
  };
}

export function markDirty(state: ViewState, segmentId: string, text: string): void {
  state.dirty.set(segmentId, text);
}

export function clearDirty(state: ViewState): void {
  state.dirty.clear();
}
