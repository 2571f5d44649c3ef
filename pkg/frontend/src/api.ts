/** Typed client over the asdkb HTTP API. */

export interface QaResponse {
    answered: boolean;
    route: 'pattern' | 'fallback' | 'none';
    answer_text: string;
    entities: string[];
    entity_labels: Record<string, { zh?: string; en?: string }>;
    screening_redirect: boolean;
    pattern_id: string | null;
}

export interface ToolSummary {
    iri: string;
    name: string;
    introduction: string;
    author: string;
    user: string[];
    age_min: number;
    age_max: number;
    time_minutes: number;
    rule: string;
    boundary: number;
    polarity: 'ascending_risk' | 'descending_risk';
    language: string;
    questions: string[];
}

export interface OptionDetail {
    iri: string;
    text: string;
    score: number;
}

export interface QuestionDetail {
    iri: string;
    text: string;
    has_explanation: boolean;
    options: OptionDetail[];
}

export interface ToolDetail extends Omit<ToolSummary, 'questions'> {
    questions: QuestionDetail[];
}

export interface ScoreResponse {
    total: number;
    boundary: number;
    at_risk: boolean;
    advice: string;
    matched_standards: string[];
    explanations: Array<{
        option: string;
        option_text: string;
        standard: string;
        standard_text: string;
    }>;
}

export interface SymptomExplanation {
    iri: string;
    label_zh?: string;
    label_en?: string;
    introduction?: string;
}

export interface DivisionNode {
    code: string;
    name: string;
    level: 'province' | 'city' | 'district';
    population: number;
    children: DivisionNode[];
}

export interface PhysicianEntry {
    iri: string;
    name: string;
    title: string;
    specialty: string;
    department: string;
    thumbs_up: number;
    thumbs_down: number;
    hospital: {
        iri: string;
        name: string;
        address: string;
        contact: string;
        level: string;
        division: string;
    };
}

export interface RecommendResponse {
    division: string;
    fallback: boolean;
    fallback_available: boolean;
    physicians: PhysicianEntry[];
}

export interface RecommendParams {
    province?: string;
    city?: string;
    district?: string;
    k?: number;
    fallback?: boolean;
}

export function localId(iri: string): string {
    const parts = iri.split('/');
    return parts[parts.length - 1];
}

export class ApiError extends Error {
    constructor(public status: number, message: string) {
        super(message);
    }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    private fetchFn: FetchLike;

    constructor(public base: string, fetchFn?: FetchLike) {
        this.base = base.replace(/\/$/, '');
        this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
    }

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(this.base + path, init);
        if (!response.ok) {
            let detail = `${response.status}`;
            try {
                const body = await response.json();
                detail = body.error ?? body.detail ?? detail;
            } catch {
                /* non-JSON error body */
            }
            throw new ApiError(response.status, detail);
        }
        return response.json() as Promise<T>;
    }

    private post<T>(path: string, body: unknown): Promise<T> {
        return this.request<T>(path, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(body),
        });
    }

    health(): Promise<{ status: string; triples: number }> {
        return this.request('/health');
    }

    qa(question: string): Promise<QaResponse> {
        return this.post('/qa', { question });
    }

    tools(age: number, filler: string, lang?: string): Promise<ToolSummary[]> {
        const params = new URLSearchParams({ age: String(age), filler });
        if (lang) params.set('lang', lang);
        return this.request<{ tools: ToolSummary[] }>(
            `/tools?${params}`,
        ).then((body) => body.tools);
    }

    toolDetail(iri: string): Promise<ToolDetail> {
        return this.request(`/tools/${localId(iri)}`);
    }

    createSession(tool: string): Promise<{ session_id: string }> {
        return this.post('/sessions', { tool });
    }

    answer(sessionId: string, question: string, option: string): Promise<unknown> {
        return this.post(`/sessions/${sessionId}/answers`, { question, option });
    }

    score(sessionId: string): Promise<ScoreResponse> {
        return this.post(`/sessions/${sessionId}/score`, {});
    }

    explanation(questionIri: string): Promise<SymptomExplanation[]> {
        return this.request<{ symptoms: SymptomExplanation[] }>(
            `/questions/${localId(questionIri)}/explanation`,
        ).then((body) => body.symptoms);
    }

    divisions(): Promise<DivisionNode[]> {
        return this.request<{ divisions: DivisionNode[] }>('/divisions').then(
            (body) => body.divisions,
        );
    }

    recommend(params: RecommendParams): Promise<RecommendResponse> {
        const search = new URLSearchParams();
        if (params.province) search.set('province', params.province);
        if (params.city) search.set('city', params.city);
        if (params.district) search.set('district', params.district);
        if (params.k !== undefined) search.set('k', String(params.k));
        if (params.fallback !== undefined) search.set('fallback', String(params.fallback));
        return this.request(`/recommend?${search}`);
    }

    vote(
        physicianIri: string,
        direction: 'up' | 'down',
    ): Promise<{ thumbs_up: number; thumbs_down: number }> {
        return this.post(`/physicians/${localId(physicianIri)}/vote`, { direction });
    }

    entityUrl(iri: string): string {
        return `${this.base}/entity/${localId(iri)}`;
    }
}
