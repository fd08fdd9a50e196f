import { ApiClient, ApiError } from "./api.js";
import type { SessionView } from "./types.js";

// The view is a verbatim copy of the last server response plus purely local
// UI state (the selected centres and an error banner).  Configurations are
// never constructed or edited on the client.
export interface ViewState {
  session: string;
  config: SessionView["config"];
  eligible: string[][];
  historyLen: number;
  selection: ReadonlySet<string>;
  error: string | null;
  pending: boolean;
}

export function fromResponse(response: SessionView): ViewState {
  return {
    session: response.session,
    config: response.config,
    eligible: response.eligible,
    historyLen: response.history_len,
    selection: new Set(),
    error: null,
    pending: false,
  };
}

export function actionableIds(eligible: string[][]): Set<string> {
  const ids = new Set<string>();
  for (const move of eligible) for (const id of move) ids.add(id);
  return ids;
}

function isSubsetOfOneMove(selection: Set<string>, eligible: string[][]): boolean {
  if (selection.size === 0) return true;
  return eligible.some((move) => {
    const ids = new Set(move);
    for (const picked of selection) if (!ids.has(picked)) return false;
    return true;
  });
}

/** Toggle a vertex in the selection.  Inert vertices and selections that no
 * eligible move contains are refused: the state comes back unchanged. */
export function toggleSelection(view: ViewState, id: string): ViewState {
  if (!actionableIds(view.eligible).has(id)) return view;
  const next = new Set(view.selection);
  if (next.has(id)) {
    next.delete(id);
  } else {
    next.add(id);
  }
  if (!isSubsetOfOneMove(next, view.eligible)) return view;
  return { ...view, selection: next, error: null };
}

export function selectionIsEligible(view: ViewState): boolean {
  if (view.selection.size === 0) return false;
  return view.eligible.some(
    (move) =>
      move.length === view.selection.size && move.every((id) => view.selection.has(id)),
  );
}

/** Send the selected move.  The server stays authoritative: a rejected move
 * (409) or a transport failure leaves the state unchanged apart from the
 * error banner. */
export async function commitSelection(view: ViewState, api: ApiClient): Promise<ViewState> {
  if (view.selection.size === 0) return view;
  const centers = [...view.selection].sort();
  try {
    const response = await api.flop(view.session, centers);
    return fromResponse(response);
  } catch (err) {
    if (err instanceof ApiError) {
      return { ...view, error: err.message, pending: false };
    }
    return { ...view, error: "request failed; the server may be unreachable — retry", pending: false };
  }
}

export async function undoMove(view: ViewState, api: ApiClient): Promise<ViewState> {
  if (view.historyLen === 0) return view;
  try {
    const response = await api.undo(view.session);
    return fromResponse(response);
  } catch (err) {
    if (err instanceof ApiError) {
      return { ...view, error: err.message, pending: false };
    }
    return { ...view, error: "request failed; the server may be unreachable — retry", pending: false };
  }
}
