// Report view model: selects and shapes server-computed values for display.
// No scores, distances or rankings are recomputed here — the view only
// reorders and formats what the report document already contains.

import type { RankingSection, ReportDoc, TaskMetricRow } from './types.js';

export interface RankedRow {
  position: number;
  alternative: string;
  name: string;
  rc: number;
  adjective: string | null;
}

export type ReportScope = 'global' | string; // role id

export function availableScopes(report: ReportDoc): ReportScope[] {
  if (!report.rankings) return [];
  return ['global', ...Object.keys(report.rankings.roles)];
}

function section(report: ReportDoc, scope: ReportScope): RankingSection | null {
  if (!report.rankings) return null;
  return scope === 'global' ? report.rankings.global : (report.rankings.roles[scope] ?? null);
}

/** Ranking table rows for a scope, best alternative first. */
export function rankingRows(report: ReportDoc, scope: ReportScope): RankedRow[] {
  const ranking = section(report, scope);
  if (!ranking || !report.scores) return [];
  const names = new Map(report.project.alternatives.map((a) => [a.id, a.name]));
  const adjectives =
    scope === 'global'
      ? report.scores.adjectives.global
      : (report.scores.adjectives.roles[scope] ?? []);
  const byAlternative = new Map(
    report.project.alternatives.map((a, i) => [a.id, adjectives[i] ?? null]),
  );
  return ranking.order.map((alt, position) => {
    const index = ranking.alternatives.indexOf(alt);
    return {
      position: position + 1,
      alternative: alt,
      name: names.get(alt) ?? alt,
      rc: ranking.rc[index],
      adjective: byAlternative.get(alt)?.display ?? null,
    };
  });
}

export function winner(report: ReportDoc, scope: ReportScope): string | null {
  const rows = rankingRows(report, scope);
  return rows.length > 0 ? rows[0].alternative : null;
}

export interface NpsRow {
  alternative: string;
  promoters: number;
  passives: number;
  detractors: number;
  nps: number | null;
}

export function npsRows(report: ReportDoc): NpsRow[] {
  return report.project.alternatives.map((a) => {
    const summary = report.nps[a.id];
    return {
      alternative: a.id,
      promoters: summary?.promoters ?? 0,
      passives: summary?.passives ?? 0,
      detractors: summary?.detractors ?? 0,
      nps: summary ? summary.nps : null,
    };
  });
}

/** Task metric rows for one scope ("all" or a role id) and alternative. */
export function taskRows(
  report: ReportDoc,
  scope: string,
  alternative: string,
): TaskMetricRow[] {
  return report.task_metrics.filter(
    (row) => row.scope === scope && row.alternative === alternative,
  );
}

export function taskScopes(report: ReportDoc): string[] {
  return [...new Set(report.task_metrics.map((row) => row.scope))];
}

export function formatSatisfaction(row: TaskMetricRow): string {
  const { index, alpha } = row.satisfaction;
  const sign = alpha < 0 ? '-' : '+';
  return `s${index} ${sign} ${Math.abs(alpha).toFixed(2)}`;
}

export function formatRc(value: number): string {
  return value.toFixed(3);
}
