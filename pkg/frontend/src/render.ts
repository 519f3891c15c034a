// HTML renderers: pure functions from state to markup strings, mounted via
// innerHTML by main.ts. Keeping them pure makes the views testable without
// a browser.

import type { ReportDoc, TaskDefinition } from './types.js';
import type { SessionState, UtRunState } from './session.js';
import type { WizardState } from './wizard.js';
import { WIZARD_STEPS, blockers } from './wizard.js';
import {
  availableScopes,
  npsRows,
  rankingRows,
  formatRc,
  taskRows,
  formatSatisfaction,
} from './report.js';

export function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

// ---- moderator wizard ----

export function renderWizard(state: WizardState): string {
  const crumbs = WIZARD_STEPS.map((step) =>
    step === state.step
      ? `<strong class="crumb active">${step}</strong>`
      : `<span class="crumb">${step}</span>`,
  ).join(' &rsaquo; ');
  const problems = blockers(state);
  const gate =
    problems.length > 0
      ? `<ul class="blockers">${problems.map((p) => `<li>${esc(p)}</li>`).join('')}</ul>`
      : '';
  const ciBadge = renderCiBadge(state);
  return `
  <nav class="wizard-steps">${crumbs}</nav>
  ${state.step === 'judgments' ? ciBadge : ''}
  <section id="step-body" data-step="${state.step}"></section>
  ${gate}
  <footer>
    <button id="wizard-back">Back</button>
    <button id="wizard-next" ${problems.length > 0 ? 'disabled' : ''}>
      ${state.step === 'review' ? 'Open for collection' : 'Next'}
    </button>
  </footer>`;
}

export function renderCiBadge(state: WizardState): string {
  if (!state.weights) {
    return '<span class="ci-badge pending">consistency: pending</span>';
  }
  const { ci, consistent } = state.weights;
  const cls = consistent ? 'ok' : 'blocked';
  const verdict = consistent ? 'consistent' : 'inconsistent';
  return `<span class="ci-badge ${cls}">CI ${ci.toFixed(2)} &middot; ${verdict}</span>`;
}

export function renderWeightsPreview(state: WizardState): string {
  if (!state.weights) return '';
  const ids = state.config.criteria.map((c) => c.id);
  const cells = state.weights.normalized
    .map((w, i) => `<td>${esc(ids[i] ?? `C${i + 1}`)}: ${w.toFixed(3)}</td>`)
    .join('');
  return `<table class="weights-preview"><tr>${cells}</tr></table>`;
}

// ---- participant dashboard ----

export function renderCompletion(state: SessionState, alternatives: string[]): string {
  const rows = alternatives
    .map((alt) => {
      const row = state.completion[alt] ?? {};
      const checks = Object.entries(row)
        .map(
          ([test, done]) =>
            `<td class="check ${done ? 'done' : 'pending'}" data-alt="${alt}" data-test="${test}">` +
            `${done ? '&#10003;' : '&#9633;'} ${test}</td>`,
        )
        .join('');
      return `<tr><th>${esc(alt)}</th>${checks}</tr>`;
    })
    .join('');
  return `<table class="completion">${rows}</table>`;
}

export function renderRolePicker(roles: { id: string; label: string }[]): string {
  const options = roles
    .map((r) => `<option value="${r.id}">${esc(r.label)}</option>`)
    .join('');
  return `
  <label>Play as <select id="role-select">${options}</select></label>
  <button id="role-bind">Start</button>
  <button id="role-dice" title="let the dice decide">&#127922; Roll the dice</button>`;
}

export function renderTaskRunner(run: UtRunState, elapsed: number): string {
  if (!run.current) {
    return `<p class="ut-done">All ${run.tasks.length} tasks answered.
      <button id="ut-submit">Submit usability test</button></p>`;
  }
  const task = run.current.task;
  const position = run.results.length + 1;
  return `
  <div class="ut-task">
    <p class="ut-progress">Task ${position} of ${run.tasks.length}</p>
    <h3>${esc(task.description)}</h3>
    <p class="ut-timer" data-limit="${task.max_time_s}">${elapsed.toFixed(0)}s</p>
    <label>How did it feel?
      <select id="ut-satisfaction">
        <option value="0">Unsatisfied</option>
        <option value="1">Dissatisfied</option>
        <option value="2" selected>Indifferent</option>
        <option value="3">Satisfied</option>
        <option value="4">Very satisfied</option>
      </select>
    </label>
    <button id="ut-done">Done</button>
    <button id="ut-failed">Could not do it</button>
  </div>`;
}

export function renderSusForm(statements: string[]): string {
  const rows = statements
    .map(
      (statement, i) => `
    <tr><td>${i + 1}. ${esc(statement)}</td><td>${[1, 2, 3, 4, 5]
      .map(
        (v) =>
          `<label><input type="radio" name="sus-${i}" value="${v}" ${v === 3 ? 'checked' : ''}>${v}</label>`,
      )
      .join(' ')}</td></tr>`,
    )
    .join('');
  return `<table class="sus-form">${rows}</table><button id="sus-submit">Submit</button>`;
}

export function renderNpsForm(): string {
  const dots = Array.from({ length: 11 }, (_, v) =>
    `<label><input type="radio" name="ltr" value="${v}" ${v === 5 ? 'checked' : ''}>${v}</label>`,
  ).join(' ');
  return `
  <p>How likely are you to recommend this website?</p>
  <div class="nps-scale">${dots}</div>
  <button id="nps-submit">Submit</button>`;
}

export function renderAccForm(): string {
  return `
  <p>Conformance verdict from the accessibility scan report:</p>
  <select id="acc-label">
    <option value="A">A</option>
    <option value="AA">AA</option>
    <option value="AAA">AAA</option>
  </select>
  <button id="acc-submit">Submit</button>`;
}

// ---- report dashboard ----

export function renderReport(report: ReportDoc, scope: string, stale: boolean): string {
  if (report.insufficient_data || !report.rankings) {
    return `<p class="empty">Insufficient data: no submissions were evaluated yet.</p>`;
  }
  const scopes = availableScopes(report);
  const roleLabel = (id: string) =>
    id === 'global'
      ? 'Global'
      : (report.project.roles.find((r) => r.id === id)?.label ?? id);
  const tabs = scopes
    .map(
      (s) =>
        `<button class="scope-tab ${s === scope ? 'active' : ''}" data-scope="${s}">${esc(roleLabel(s))}</button>`,
    )
    .join('');
  const rows = rankingRows(report, scope)
    .map(
      (row) => `
    <tr class="rank-row" data-alt="${row.alternative}">
      <td>${row.position}</td><td>${esc(row.name)}</td>
      <td>${formatRc(row.rc)}</td><td>${row.adjective ? esc(row.adjective) : ''}</td>
    </tr>`,
    )
    .join('');
  const order = rankingRows(report, scope)
    .map((r) => r.alternative)
    .join(' &succ; ');
  const nps = npsRows(report)
    .map(
      (row) => `
    <tr><td>${row.alternative}</td><td>${row.nps === null ? 'n/a' : row.nps.toFixed(1)}</td>
    <td>${row.promoters}</td><td>${row.passives}</td><td>${row.detractors}</td></tr>`,
    )
    .join('');
  const warnings = report.warnings.length
    ? `<ul class="warnings">${report.warnings.map((w) => `<li>${esc(w)}</li>`).join('')}</ul>`
    : '';
  return `
  ${stale ? '<p class="stale">New submissions arrived since this report was computed.</p>' : ''}
  <nav class="scopes">${tabs}</nav>
  <h2 class="ranking-order">${order}</h2>
  <table class="ranking"><tr><th>#</th><th>website</th><th>closeness</th><th>usability</th></tr>${rows}</table>
  <h3>Net promoter score</h3>
  <table class="nps"><tr><th>website</th><th>NPS</th><th>promoters</th><th>passives</th><th>detractors</th></tr>${nps}</table>
  <section id="task-metrics"></section>
  ${warnings}`;
}

export function renderTaskMetrics(
  report: ReportDoc,
  scope: string,
  alternative: string,
  definitions: TaskDefinition[] = [],
): string {
  const names = new Map(definitions.map((d) => [d.id, d.description]));
  const rows = taskRows(report, scope, alternative)
    .map(
      (row) => `
    <tr><td>${esc(names.get(row.task) ?? row.task)}</td>
    <td>${row.efficiency_pct.toFixed(1)}%</td>
    <td>${row.success_pct.toFixed(1)}%</td>
    <td>${formatSatisfaction(row)}</td></tr>`,
    )
    .join('');
  if (!rows) return '<p class="empty">No task metrics for this selection.</p>';
  return `<table class="task-metrics">
    <tr><th>task</th><th>on time</th><th>succeeded</th><th>satisfaction</th></tr>${rows}</table>`;
}
