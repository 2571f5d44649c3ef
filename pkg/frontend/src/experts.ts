/** Expert finder: cascading division selectors, ranked list, thumbs voting. */

import { ApiClient, DivisionNode, PhysicianEntry, RecommendParams } from './api.js';
import { banner, clear, el } from './render.js';

export class ExpertsView {
    readonly root: HTMLElement;
    private province: HTMLSelectElement;
    private city: HTMLSelectElement;
    private district: HTMLSelectElement;
    private results: HTMLElement;
    private tree: DivisionNode[] = [];
    private fallbackWanted = false;

    constructor(private api: ApiClient) {
        this.province = el('select', { class: 'sel-province' });
        this.city = el('select', { class: 'sel-city' });
        this.district = el('select', { class: 'sel-district' });
        this.results = el('div', { class: 'expert-results' });
        const search = el('button', { type: 'button', class: 'expert-search' }, '查找专家');
        search.addEventListener('click', () => void this.search());
        this.root = el(
            'section',
            { class: 'experts-view' },
            el(
                'div',
                { class: 'division-selectors' },
                el('label', {}, '省', this.province),
                el('label', {}, '市', this.city),
                el('label', {}, '区县', this.district),
                search,
            ),
            this.results,
        );
        this.province.addEventListener('change', () => this.fillCities());
        this.city.addEventListener('change', () => this.fillDistricts());
    }

    async load(): Promise<void> {
        this.tree = await this.api.divisions();
        this.fill(this.province, this.tree, '选择省份');
        this.fillCities();
    }

    private fill(
        select: HTMLSelectElement,
        nodes: DivisionNode[],
        placeholder: string,
    ): void {
        clear(select);
        select.append(el('option', { value: '' }, placeholder));
        for (const node of nodes) {
            select.append(el('option', { value: node.code }, node.name));
        }
    }

    private selectedProvince(): DivisionNode | undefined {
        return this.tree.find((n) => n.code === this.province.value);
    }

    private fillCities(): void {
        const province = this.selectedProvince();
        this.fill(this.city, province?.children ?? [], '全部城市');
        this.fillDistricts();
    }

    private fillDistricts(): void {
        const province = this.selectedProvince();
        const city = province?.children.find((n) => n.code === this.city.value);
        this.fill(this.district, city?.children ?? [], '全部区县');
    }

    params(): RecommendParams {
        const params: RecommendParams = { fallback: this.fallbackWanted };
        if (this.province.value) params.province = this.province.value;
        if (this.city.value) params.city = this.city.value;
        if (this.district.value) params.district = this.district.value;
        return params;
    }

    async search(extra: Partial<RecommendParams> = {}): Promise<void> {
        const params = { ...this.params(), ...extra };
        if (!params.province && !params.city && !params.district) {
            clear(this.results);
            this.results.append(banner('info', '请先选择目标行政区划'));
            return;
        }
        let response;
        try {
            response = await this.api.recommend(params);
        } catch {
            clear(this.results);
            this.results.append(banner('error', '服务暂时不可用，请稍后重试'));
            return;
        }
        clear(this.results);
        if (response.physicians.length === 0) {
            // empty-result state offers the distance-fallback toggle
            this.results.append(banner('info', '所选区域内暂无专家'));
            if (response.fallback_available) {
                const toggle = el(
                    'button',
                    { type: 'button', class: 'fallback-toggle' },
                    '查找附近其他地区的专家',
                );
                toggle.addEventListener('click', () => {
                    this.fallbackWanted = true;
                    void this.search({ fallback: true });
                });
                this.results.append(toggle);
            }
            return;
        }
        if (response.fallback) {
            this.results.append(banner('info', '所选区域内暂无专家，已按距离推荐附近医院'));
        }
        const list = el('ol', { class: 'physician-list' });
        for (const physician of response.physicians) {
            list.append(this.renderPhysician(physician, response.fallback));
        }
        this.results.append(list);
    }

    /** Rendered strictly in server order; the UI never re-sorts. */
    private renderPhysician(entry: PhysicianEntry, nearby: boolean): HTMLElement {
        const up = el('span', { class: 'thumbs-up-count' }, String(entry.thumbs_up));
        const down = el('span', { class: 'thumbs-down-count' }, String(entry.thumbs_down));
        const upBtn = el('button', { type: 'button', class: 'thumbs-up' }, '👍');
        const downBtn = el('button', { type: 'button', class: 'thumbs-down' }, '👎');
        const wire = (
            button: HTMLButtonElement,
            counter: HTMLElement,
            direction: 'up' | 'down',
        ) => {
            button.addEventListener('click', () => {
                // optimistic bump, reconciled with the server's counts
                counter.textContent = String(Number(counter.textContent) + 1);
                this.api
                    .vote(entry.iri, direction)
                    .then((counts) => {
                        up.textContent = String(counts.thumbs_up);
                        down.textContent = String(counts.thumbs_down);
                    })
                    .catch(() => {
                        counter.textContent = String(Number(counter.textContent) - 1);
                    });
            });
        };
        wire(upBtn, up, 'up');
        wire(downBtn, down, 'down');
        return el(
            'li',
            { class: 'physician-card', 'data-iri': entry.iri },
            el(
                'h3',
                {},
                el('a', { href: this.api.entityUrl(entry.iri), target: '_blank' }, entry.name),
                ' ',
                el('span', { class: 'physician-title' }, entry.title),
                nearby ? el('span', { class: 'badge-nearby' }, '附近') : null,
            ),
            el('p', { class: 'physician-dept' }, `${entry.hospital.name} · ${entry.department}`),
            el('p', { class: 'physician-hospital-meta' },
               `${entry.hospital.level} · ${entry.hospital.address}`),
            el('p', { class: 'physician-specialty' }, `擅长：${entry.specialty}`),
            el('p', { class: 'physician-votes' }, upBtn, up, ' ', downBtn, down),
        );
    }
}
