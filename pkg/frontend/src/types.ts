// Wire types of the evaluation service API. The UI displays these values
// verbatim; every number on screen originates from a service response.

export type TestKind = 'SUS' | 'NPS' | 'UT' | 'ACC';
export type ProjectState = 'draft' | 'collecting' | 'closed';

export interface Alternative {
  id: string;
  name: string;
  url: string;
}

export interface TaskDefinition {
  id: string;
  description: string;
  max_time_s: number;
}

export interface Criterion {
  id: string;
  kind: TestKind;
  name: string;
  tasks?: TaskDefinition[];
}

export interface UserRecord {
  id: string;
  name: string;
  group: 'expert' | 'end_user';
}

export interface RoleRecord {
  id: string;
  label: string;
  weight: number;
  category?: string;
}

export interface Judgment {
  left: string;
  right: string;
  label: string;
}

export interface ProjectConfigDoc {
  name: string;
  alternatives: Alternative[];
  criteria: Criterion[];
  users: UserRecord[];
  roles: RoleRecord[];
  group_weights: Record<string, number>;
  judgments: Judgment[];
}

export interface WeightsDoc {
  raw: number[];
  normalized: number[];
  ci: number;
  consistent: boolean;
}

export interface SessionDoc {
  user: string;
  group: 'expert' | 'end_user';
  role: string | null;
  state: ProjectState;
  completion: Record<string, Record<string, boolean>> | null;
}

export interface RankingSection {
  scope: string;
  alternatives: string[];
  order: string[];
  rc: number[];
  d_plus: number[];
  d_minus: number[];
}

export interface AdjectiveEntry {
  scale: 'SUS';
  label: string;
  alpha: number;
  level: number;
  display: string;
}

export interface NpsSection {
  promoters: number;
  passives: number;
  detractors: number;
  nps: number;
}

export interface TaskMetricRow {
  scope: string;
  alternative: string;
  task: string;
  efficiency_pct: number;
  success_pct: number;
  satisfaction: { set: string; index: number; alpha: number };
}

export interface ReportDoc {
  project: {
    name: string;
    alternatives: { id: string; name: string; url: string }[];
    criteria: { id: string; kind: TestKind; name: string }[];
    roles: { id: string; label: string; category: string }[];
  };
  weights: {
    criteria: Record<string, number>;
    ci: number;
    consistent: boolean;
    roles: Record<string, number>;
    groups: Record<string, number>;
  };
  insufficient_data: boolean;
  warnings: string[];
  rankings: {
    global: RankingSection;
    roles: Record<string, RankingSection>;
  } | null;
  scores: {
    adjectives: {
      global: AdjectiveEntry[];
      roles: Record<string, AdjectiveEntry[]>;
    };
    usability_adjective: Record<string, string>;
  } | null;
  nps: Record<string, NpsSection | null>;
  accessibility: Record<string, { user: string; label: string }[]>;
  task_metrics: TaskMetricRow[];
}

export interface SubmissionBody {
  role?: string;
  alternative: string;
  test: TestKind;
  payload: SusPayload | NpsPayload | UtPayload | AccPayload;
}

export interface SusPayload {
  items: number[];
}

export interface NpsPayload {
  ltr: number;
}

export interface UtTaskRow {
  task: string;
  time_s: number;
  success: boolean;
  satisfaction: number;
}

export interface UtPayload {
  tasks: UtTaskRow[];
}

export interface AccPayload {
  label: 'A' | 'AA' | 'AAA';
}
