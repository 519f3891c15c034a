// SPA entry point. Hash routes:
//   #/moderator                  configuration wizard (new project)
//   #/session/<project>          participant dashboard + test forms
//   #/report/<project>           report dashboard
// Tokens are taken from the page query (?token=...) and kept in memory.

import { ApiClient, ApiError } from './api.js';
import {
  applyWeights,
  applyWeightsError,
  advance,
  back,
  initialWizardState,
  setJudgment,
  WizardState,
} from './wizard.js';
import {
  applyCompletion,
  finishTask,
  sessionFromServer,
  SessionState,
  startUtRun,
  UtRunState,
  utPayload,
  validateLtr,
  validateSusItems,
} from './session.js';
import {
  renderAccForm,
  renderCompletion,
  renderNpsForm,
  renderReport,
  renderRolePicker,
  renderSusForm,
  renderTaskMetrics,
  renderTaskRunner,
  renderWeightsPreview,
  renderWizard,
} from './render.js';
import type { Criterion, ProjectConfigDoc, ReportDoc } from './types.js';

const SUS_STATEMENTS = [
  'I think that I would like to use this website frequently.',
  'I found the website unnecessarily complex.',
  'I thought the website was easy to use.',
  'I think that I would need the support of a technical person to be able to use this website.',
  'I found the various functions in this website were well integrated.',
  'I thought there was too much inconsistency in this website.',
  'I would imagine that most people would learn to use this website very quickly.',
  'I found the website very cumbersome to use.',
  'I felt very confident using the website.',
  'I needed to learn a lot of things before I could get going with this website.',
];

function query(name: string): string | null {
  return new URLSearchParams(window.location.search).get(name);
}

function apiClient(): ApiClient {
  const base = query('api') ?? 'http://127.0.0.1:8000';
  const token = query('token');
  return new ApiClient(base, token);
}

function mount(html: string): HTMLElement {
  const root = document.getElementById('app')!;
  root.innerHTML = html;
  return root;
}

function toast(message: string): void {
  const box = document.getElementById('toast');
  if (!box) return;
  box.textContent = message;
  box.className = 'visible';
  setTimeout(() => (box.className = ''), 4000);
}

// ---- moderator wizard ----

async function moderatorView(): Promise<void> {
  const api = apiClient();
  let state: WizardState = initialWizardState('New usability A/B test');
  let projectId: string | null = null;

  const redraw = () => {
    const root = mount(renderWizard(state));
    const body = root.querySelector('#step-body')!;
    body.innerHTML = stepBody(state);
    if (state.step === 'judgments') {
      body.insertAdjacentHTML('beforeend', renderWeightsPreview(state));
      wireJudgments(body as HTMLElement);
    }
    root.querySelector('#wizard-back')?.addEventListener('click', () => {
      state = back(state);
      redraw();
    });
    root.querySelector('#wizard-next')?.addEventListener('click', async () => {
      if (state.step === 'review') {
        await openForCollection();
        return;
      }
      state = advance(state);
      redraw();
    });
  };

  const stepBody = (s: WizardState): string => {
    switch (s.step) {
      case 'alternatives':
        return `${s.config.alternatives
          .map((a) => `<p>${a.id}: ${a.name} (${a.url})</p>`)
          .join('')}
          <input id="alt-name" placeholder="short name"><input id="alt-url" placeholder="URL">
          <button id="alt-add">Add</button>`;
      case 'criteria':
        return ['SUS', 'NPS', 'UT', 'ACC']
          .map(
            (kind) =>
              `<label><input type="checkbox" class="crit" value="${kind}" ${
                s.config.criteria.some((c) => c.kind === kind) ? 'checked' : ''
              }>${kind}</label>`,
          )
          .join('<br>');
      case 'judgments':
        return judgmentRows(s);
      case 'users':
        return `${s.config.users.map((u) => `<p>${u.id} (${u.group})</p>`).join('')}
          <input id="user-name" placeholder="name">
          <select id="user-group"><option value="expert">expert</option>
          <option value="end_user">end-user</option></select>
          <button id="user-add">Add</button>`;
      case 'roles':
        return `${s.config.roles
          .map(
            (r) => `<p>${r.label}
              <input type="range" class="role-weight" data-role="${r.id}"
                     min="1" max="100" value="${r.weight}"> ${r.weight}</p>`,
          )
          .join('')}
          <input id="role-label" placeholder="role (e.g. Blind)">
          <button id="role-add">Add role</button>`;
      case 'review':
        return `<pre>${JSON.stringify(s.config, null, 1)}</pre>`;
    }
  };

  const judgmentRows = (s: WizardState): string => {
    const labels = [
      'Just important',
      'Equally important',
      'Weak importance',
      'Moderately important',
      'Strongly important',
      'Very strongly important',
      'Absolute',
    ];
    const ids = s.config.criteria.map((c) => c.id);
    const rows: string[] = [];
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const current = s.config.judgments.find(
          (jd) => jd.left === ids[i] && jd.right === ids[j],
        );
        rows.push(`<tr><td>${ids[i]} vs ${ids[j]}</td><td>
          <select class="judgment" data-left="${ids[i]}" data-right="${ids[j]}">
          <option value="">choose…</option>
          ${labels
            .map(
              (label) =>
                `<option ${current?.label === label ? 'selected' : ''}>${label}</option>`,
            )
            .join('')}
          </select></td></tr>`);
      }
    }
    return `<table>${rows.join('')}</table>`;
  };

  const wireJudgments = (body: HTMLElement): void => {
    body.querySelectorAll<HTMLSelectElement>('select.judgment').forEach((select) =>
      select.addEventListener('change', async () => {
        if (!select.value) return;
        state = setJudgment(state, {
          left: select.dataset.left!,
          right: select.dataset.right!,
          label: select.value,
        });
        await recomputeWeights();
        redraw();
      }),
    );
  };

  const recomputeWeights = async (): Promise<void> => {
    if (!projectId) {
      const created = await api.createProject(state.config);
      projectId = created.id;
      moderator = api.withToken(created.moderator_token);
    }
    try {
      const { weights } = await moderator!.putJudgments(projectId, state.config.judgments);
      state = applyWeights(state, weights);
    } catch (error) {
      state = applyWeightsError(
        state,
        error instanceof ApiError ? error.message : String(error),
      );
    }
  };

  let moderator: ApiClient | null = null;

  const openForCollection = async (): Promise<void> => {
    try {
      if (!projectId) {
        const created = await api.createProject(state.config);
        projectId = created.id;
        moderator = api.withToken(created.moderator_token);
      }
      await moderator!.setState(projectId, 'collecting');
      toast(`project ${projectId} is collecting`);
    } catch (error) {
      toast(error instanceof ApiError ? error.message : String(error));
    }
  };

  redraw();
}

// ---- participant session ----

async function sessionView(projectId: string): Promise<void> {
  const api = apiClient();
  const project = await api.getProject(projectId).catch(() => null);
  const config: ProjectConfigDoc | null = project?.config ?? null;
  const doc = await api.getSession(projectId);
  let state: SessionState = sessionFromServer(projectId, doc);
  let run: UtRunState | null = null;
  const clock = () => Date.now();
  const utCriterion = (): Criterion | undefined =>
    config?.criteria.find((c) => c.kind === 'UT');

  const redraw = () => {
    const alternatives = config?.alternatives.map((a) => a.id) ?? Object.keys(state.completion);
    if (state.role === null) {
      const root = mount(renderRolePicker(config?.roles ?? []));
      root.querySelector('#role-bind')?.addEventListener('click', async () => {
        const choice = (root.querySelector('#role-select') as HTMLSelectElement).value;
        await api.bindRole(projectId, choice);
        state = { ...state, role: choice };
        redraw();
      });
      root.querySelector('#role-dice')?.addEventListener('click', async () => {
        const rolled = await api.rollRoleDice(projectId);
        state = { ...state, role: rolled.role };
        toast(`you play ${rolled.role}`);
        redraw();
      });
      return;
    }
    const root = mount(`
      <p>Playing <strong>${state.role}</strong> as ${state.user}</p>
      ${renderCompletion(state, alternatives)}
      <section id="test-area"></section>`);
    root.querySelectorAll<HTMLElement>('.check.pending').forEach((cell) =>
      cell.addEventListener('click', () => openTest(cell.dataset.alt!, cell.dataset.test!)),
    );
  };

  const openTest = (alternative: string, test: string): void => {
    const area = document.getElementById('test-area')!;
    if (test === 'SUS') {
      area.innerHTML = renderSusForm(SUS_STATEMENTS);
      area.querySelector('#sus-submit')!.addEventListener('click', async () => {
        const items = SUS_STATEMENTS.map((_, i) => {
          const picked = area.querySelector<HTMLInputElement>(`input[name="sus-${i}"]:checked`);
          return picked ? Number(picked.value) : 0;
        });
        const problem = validateSusItems(items);
        if (problem) return toast(problem);
        await submit(alternative, 'SUS', { items });
      });
    } else if (test === 'NPS') {
      area.innerHTML = renderNpsForm();
      area.querySelector('#nps-submit')!.addEventListener('click', async () => {
        const picked = area.querySelector<HTMLInputElement>('input[name="ltr"]:checked');
        const ltr = picked ? Number(picked.value) : -1;
        const problem = validateLtr(ltr);
        if (problem) return toast(problem);
        await submit(alternative, 'NPS', { ltr });
      });
    } else if (test === 'ACC') {
      area.innerHTML = renderAccForm();
      area.querySelector('#acc-submit')!.addEventListener('click', async () => {
        const label = (area.querySelector('#acc-label') as HTMLSelectElement).value;
        await submit(alternative, 'ACC', { label });
      });
    } else if (test === 'UT') {
      run = startUtRun(utCriterion()?.tasks ?? [], clock);
      drawRunner(alternative);
    }
  };

  const drawRunner = (alternative: string): void => {
    if (!run) return;
    const area = document.getElementById('test-area')!;
    area.innerHTML = renderTaskRunner(run, 0);
    const tick = setInterval(() => {
      const timer = area.querySelector('.ut-timer');
      if (!timer || !run?.current) return clearInterval(tick);
      timer.textContent = `${Math.floor((clock() - run.current.revealedAt) / 1000)}s`;
    }, 500);
    const done = (success: boolean) => async () => {
      const satisfaction = Number(
        (area.querySelector('#ut-satisfaction') as HTMLSelectElement).value,
      );
      run = finishTask(run!, success, satisfaction, clock);
      clearInterval(tick);
      if (run.current) {
        drawRunner(alternative);
      } else {
        area.innerHTML = renderTaskRunner(run, 0);
        area.querySelector('#ut-submit')!.addEventListener('click', async () => {
          await submit(alternative, 'UT', utPayload(run!));
          run = null;
        });
      }
    };
    area.querySelector('#ut-done')?.addEventListener('click', done(true));
    area.querySelector('#ut-failed')?.addEventListener('click', done(false));
  };

  const submit = async (alternative: string, test: string, payload: object): Promise<void> => {
    try {
      const receipt = await api.submit(projectId, {
        alternative,
        test: test as never,
        payload: payload as never,
      });
      state = applyCompletion(state, receipt.completion);
      toast(`${test} recorded for ${alternative}`);
      redraw();
    } catch (error) {
      toast(error instanceof ApiError ? error.message : String(error));
    }
  };

  redraw();
}

// ---- report dashboard ----

async function reportView(projectId: string): Promise<void> {
  const api = apiClient();
  let scope = 'global';
  let payload: { report: ReportDoc; stale: boolean };
  try {
    payload = await api.getReport(projectId);
  } catch (error) {
    mount(
      `<p class="empty">${
        error instanceof ApiError && error.status === 404
          ? 'No results computed yet.'
          : 'Could not load the report.'
      }</p>`,
    );
    return;
  }

  const redraw = () => {
    const root = mount(renderReport(payload.report, scope, payload.stale));
    root.querySelectorAll<HTMLElement>('.scope-tab').forEach((tab) =>
      tab.addEventListener('click', () => {
        scope = tab.dataset.scope!;
        redraw();
      }),
    );
    const metrics = root.querySelector('#task-metrics');
    if (metrics) {
      const firstAlt = payload.report.project.alternatives[0]?.id;
      if (firstAlt) {
        metrics.innerHTML = renderTaskMetrics(
          payload.report,
          scope === 'global' ? 'all' : scope,
          firstAlt,
        );
      }
    }
  };
  redraw();
}

// ---- router ----

export async function route(): Promise<void> {
  const hash = window.location.hash || '#/report';
  const [, view, projectId] = hash.split('/');
  if (view === 'moderator') return moderatorView();
  if (view === 'session' && projectId) return sessionView(projectId);
  if (view === 'report' && projectId) return reportView(projectId);
  mount(`<p>Open <code>#/moderator</code>, <code>#/session/&lt;project&gt;</code>
         or <code>#/report/&lt;project&gt;</code> with <code>?api=…&amp;token=…</code>.</p>`);
}

if (typeof window !== 'undefined' && typeof document !== 'undefined' && document.getElementById('app')) {
  window.addEventListener('hashchange', route);
  void route();
}
