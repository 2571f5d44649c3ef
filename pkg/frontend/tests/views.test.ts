// @vitest-environment jsdom
import { describe, expect, it } from 'vitest';

import type { ApiClient, RecommendResponse, ToolSummary } from '../src/api.js';
import { ExpertsView } from '../src/experts.js';
import { ScreeningView } from '../src/screening.js';

function toolSummary(name: string, intro: string): ToolSummary {
    return {
        iri: `i/${name}`,
        name,
        introduction: intro,
        author: '',
        user: ['parent'],
        age_min: 1,
        age_max: 10,
        time_minutes: 5,
        rule: '',
        boundary: 3,
        polarity: 'ascending_risk',
        language: 'zh',
        questions: ['q1', 'q2'],
    };
}

function physician(iri: string, name: string, up = 0): RecommendResponse['physicians'][0] {
    return {
        iri,
        name,
        title: '主任医师',
        specialty: '孤独症',
        department: '儿童精神科',
        thumbs_up: up,
        thumbs_down: 0,
        hospital: {
            iri: 'i/h1',
            name: '某医院',
            address: '某路1号',
            contact: '',
            level: '三级甲等',
            division: '110101',
        },
    };
}

describe('ScreeningView scale list', () => {
    it('renders tools in server order and filters by keyword client-side', async () => {
        const served = [
            toolSummary('乙量表', '考察眼神接触'),
            toolSummary('甲量表', '考察重复行为'),
        ];
        const api = {
            tools: async () => served,
        } as unknown as ApiClient;
        const view = new ScreeningView(api);
        await view.loadTools(3, 'parent', undefined, '');
        const names = Array.from(view.root.querySelectorAll('.tool-card h3')).map(
            (n) => n.textContent,
        );
        expect(names).toEqual(['乙量表', '甲量表']); // server order preserved

        await view.loadTools(3, 'parent', undefined, '眼神接触');
        const filtered = Array.from(view.root.querySelectorAll('.tool-card h3')).map(
            (n) => n.textContent,
        );
        expect(filtered).toEqual(['乙量表']);
    });
});

describe('ExpertsView results', () => {
    function apiWith(response: RecommendResponse): ApiClient {
        return {
            divisions: async () => [
                {
                    code: '110000',
                    name: '北京市',
                    level: 'province',
                    population: 1,
                    children: [],
                },
            ],
            recommend: async () => response,
            entityUrl: (iri: string) => `http://x/entity/${iri}`,
        } as unknown as ApiClient;
    }

    it('never reorders the server-ranked physician list', async () => {
        const response: RecommendResponse = {
            division: '110000',
            fallback: false,
            fallback_available: true,
            physicians: [physician('i/p2', '乙医生'), physician('i/p1', '甲医生')],
        };
        const view = new ExpertsView(apiWith(response));
        await view.load();
        (view.root.querySelector('.sel-province') as HTMLSelectElement).value = '110000';
        await view.search();
        const names = Array.from(
            view.root.querySelectorAll('.physician-card h3 a'),
        ).map((n) => n.textContent);
        expect(names).toEqual(['乙医生', '甲医生']);
    });

    it('offers the distance-fallback toggle on empty results', async () => {
        const empty: RecommendResponse = {
            division: '110000',
            fallback: false,
            fallback_available: true,
            physicians: [],
        };
        const view = new ExpertsView(apiWith(empty));
        await view.load();
        (view.root.querySelector('.sel-province') as HTMLSelectElement).value = '110000';
        await view.search();
        expect(view.root.querySelector('.fallback-toggle')).not.toBeNull();
    });

    it('shows the nearby badge on fallback results', async () => {
        const nearby: RecommendResponse = {
            division: '110000',
            fallback: true,
            fallback_available: true,
            physicians: [physician('i/p1', '甲医生')],
        };
        const view = new ExpertsView(apiWith(nearby));
        await view.load();
        (view.root.querySelector('.sel-province') as HTMLSelectElement).value = '110000';
        await view.search();
        expect(view.root.querySelector('.badge-nearby')).not.toBeNull();
    });
});
