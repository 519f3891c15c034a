// Participant session: role binding, the per-alternative completion matrix
// (always mirrored from server responses) and the usability-test runner.
//
// The task timer starts when a task is revealed and stops on "done" or
// "failed"; the measured seconds travel with the response. A clock function
// is injected so tests can drive time deterministically.

import type {
  Criterion,
  SessionDoc,
  TaskDefinition,
  UtTaskRow,
} from './types.js';

export type Clock = () => number; // milliseconds

export interface SessionState {
  projectId: string;
  user: string;
  group: 'expert' | 'end_user';
  role: string | null;
  completion: Record<string, Record<string, boolean>>;
}

export function sessionFromServer(projectId: string, doc: SessionDoc): SessionState {
  return {
    projectId,
    user: doc.user,
    group: doc.group,
    role: doc.role,
    completion: doc.completion ?? {},
  };
}

/** Server acknowledgement is the only source of completion state. */
export function applyCompletion(
  state: SessionState,
  completion: Record<string, Record<string, boolean>>,
): SessionState {
  return { ...state, completion };
}

export function completedCount(state: SessionState, alternative: string): number {
  const row = state.completion[alternative] ?? {};
  return Object.values(row).filter(Boolean).length;
}

/** Tests this participant may take (accessibility is expert-only). */
export function availableTests(state: SessionState, criteria: Criterion[]): string[] {
  return criteria
    .filter((c) => c.kind !== 'ACC' || state.group === 'expert')
    .map((c) => c.kind);
}

// ---- usability-test runner ----

export interface TaskRun {
  task: TaskDefinition;
  revealedAt: number;
}

export interface UtRunState {
  tasks: TaskDefinition[];
  current: TaskRun | null;
  results: UtTaskRow[];
}

export function startUtRun(tasks: TaskDefinition[], clock: Clock): UtRunState {
  if (tasks.length === 0) {
    return { tasks, current: null, results: [] };
  }
  return { tasks, current: { task: tasks[0], revealedAt: clock() }, results: [] };
}

export function elapsedSeconds(run: UtRunState, clock: Clock): number {
  if (!run.current) return 0;
  return (clock() - run.current.revealedAt) / 1000;
}

/**
 * Record the outcome of the current task and reveal the next one. Overlong
 * times are recorded as measured: the server decides efficiency.
 */
export function finishTask(
  run: UtRunState,
  success: boolean,
  satisfaction: number,
  clock: Clock,
): UtRunState {
  if (!run.current) throw new Error('no task is running');
  if (!Number.isInteger(satisfaction) || satisfaction < 0 || satisfaction > 4) {
    throw new Error('satisfaction must be a term index 0..4');
  }
  const seconds = (clock() - run.current.revealedAt) / 1000;
  const results = [
    ...run.results,
    {
      task: run.current.task.id,
      time_s: Math.round(seconds * 10) / 10,
      success,
      satisfaction,
    },
  ];
  const next = run.tasks[results.length];
  return {
    tasks: run.tasks,
    current: next ? { task: next, revealedAt: clock() } : null,
    results,
  };
}

export function runComplete(run: UtRunState): boolean {
  return run.current === null && run.results.length === run.tasks.length;
}

export function utPayload(run: UtRunState): { tasks: UtTaskRow[] } {
  if (!runComplete(run)) {
    throw new Error('finish every task before submitting the usability test');
  }
  return { tasks: run.results };
}

// ---- questionnaire validation (client-side convenience only;
//      the service revalidates everything) ----

export function validateSusItems(items: number[]): string | null {
  if (items.length !== 10) return 'answer all ten statements';
  if (items.some((x) => !Number.isInteger(x) || x < 1 || x > 5)) {
    return 'answers must be on the 1..5 scale';
  }
  return null;
}

export function validateLtr(value: number): string | null {
  if (!Number.isInteger(value) || value < 0 || value > 10) {
    return 'the recommendation answer is a whole number from 0 to 10';
  }
  return null;
}
