// Moderator wizard: a linear flow over the project configuration steps.
// The judgments step re-fetches weights from the service on every edit and
// refuses to advance while the service reports the matrix inconsistent.

import type { Judgment, ProjectConfigDoc, WeightsDoc } from './types.js';

export const WIZARD_STEPS = [
  'alternatives',
  'criteria',
  'judgments',
  'users',
  'roles',
  'review',
] as const;

export type WizardStep = (typeof WIZARD_STEPS)[number];

export const CONSISTENCY_THRESHOLD = 0.1;

export interface WizardState {
  step: WizardStep;
  config: ProjectConfigDoc;
  weights: WeightsDoc | null;
  messages: string[];
}

export function initialWizardState(name: string): WizardState {
  return {
    step: 'alternatives',
    config: {
      name,
      alternatives: [],
      criteria: [],
      users: [],
      roles: [],
      group_weights: { expert: 1.0, end_user: 1.0 },
      judgments: [],
    },
    weights: null,
    messages: [],
  };
}

/** All pairs that need a judgment, in declaration order. */
export function judgmentPairs(config: ProjectConfigDoc): [string, string][] {
  const ids = config.criteria.map((c) => c.id);
  const pairs: [string, string][] = [];
  for (let i = 0; i < ids.length; i++) {
    for (let j = i + 1; j < ids.length; j++) pairs.push([ids[i], ids[j]]);
  }
  return pairs;
}

export function missingJudgments(config: ProjectConfigDoc): [string, string][] {
  const given = new Set(config.judgments.map((j) => `${j.left}|${j.right}`));
  return judgmentPairs(config).filter(([a, b]) => !given.has(`${a}|${b}`));
}

/** Why the current step cannot be left yet; empty list means it can. */
export function blockers(state: WizardState): string[] {
  const { config, weights } = state;
  switch (state.step) {
    case 'alternatives':
      return config.alternatives.length === 0
        ? ['add at least one alternative website']
        : [];
    case 'criteria':
      return config.criteria.length === 0 ? ['enable at least one test'] : [];
    case 'judgments': {
      const problems: string[] = [];
      const missing = missingJudgments(config);
      if (config.criteria.length > 1 && missing.length > 0) {
        problems.push(`judge the remaining pairs: ${missing.map((p) => p.join(' vs ')).join(', ')}`);
      }
      if (config.criteria.length > 1 && weights === null) {
        problems.push('waiting for the weight computation');
      }
      if (weights !== null && !weights.consistent) {
        problems.push(
          `judgments are inconsistent (CI ${weights.ci.toFixed(2)} > ${CONSISTENCY_THRESHOLD}); revise the matrix`,
        );
      }
      return problems;
    }
    case 'users':
      return config.users.length === 0 ? ['register at least one participant'] : [];
    case 'roles':
      return config.roles.length === 0 ? ['select at least one role'] : [];
    case 'review':
      return [];
  }
}

export function canAdvance(state: WizardState): boolean {
  return blockers(state).length === 0;
}

export function advance(state: WizardState): WizardState {
  const problems = blockers(state);
  if (problems.length > 0) {
    return { ...state, messages: problems };
  }
  const index = WIZARD_STEPS.indexOf(state.step);
  const step = WIZARD_STEPS[Math.min(index + 1, WIZARD_STEPS.length - 1)];
  return { ...state, step, messages: [] };
}

export function back(state: WizardState): WizardState {
  const index = WIZARD_STEPS.indexOf(state.step);
  const step = WIZARD_STEPS[Math.max(index - 1, 0)];
  return { ...state, step, messages: [] };
}

export function setJudgment(
  state: WizardState,
  judgment: Judgment,
): WizardState {
  const rest = state.config.judgments.filter(
    (j) => !(j.left === judgment.left && j.right === judgment.right),
  );
  return {
    ...state,
    // weights are stale until the service recomputes them
    weights: null,
    config: { ...state.config, judgments: [...rest, judgment] },
  };
}

export function applyWeights(state: WizardState, weights: WeightsDoc): WizardState {
  return { ...state, weights, messages: [] };
}

export function applyWeightsError(state: WizardState, message: string): WizardState {
  return { ...state, weights: null, messages: [message] };
}
