#!/usr/bin/env python3
"""Regenerate the bundled fixture dataset, word lists, QA patterns, and
evaluation question sets, then self-check them through the full ingest and
QA pipeline.  Run from the repository root:

    python scripts/build_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

DATA = ROOT / "src" / "asdkb" / "data"
FIXTURES = DATA / "fixtures"

P = "http://w3id.org/asdkb/ontology/property/"
C = "http://w3id.org/asdkb/ontology/class/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


def jsonl(path: Path, rows):
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    print(f"wrote {path.relative_to(ROOT)} ({len(rows)} rows)")


# --------------------------------------------------------------------------
# symptoms: 65 instances across the three symptom classes
# --------------------------------------------------------------------------

SOCIAL = "ImpairmentsInSocialInteraction"
REPET = "RestrictiveRepetitiveAndStereotypedBehaviors"
OTHER = "OtherSymptoms"

SYMPTOMS = [
    ("对名字无反应", "does not respond to own name", SOCIAL),
    ("不愿与他人分享兴趣", "does not share interests with others", SOCIAL),
    ("缺乏社交性微笑", "lack of social smile", SOCIAL),
    ("不会用手指物示意", "does not point to show interest", SOCIAL),
    ("回避身体接触", "avoids physical contact", SOCIAL),
    ("喜欢独自玩耍", "prefers to play alone", SOCIAL),
    ("不能建立同伴关系", "fails to develop peer relationships", SOCIAL),
    ("不理解他人情绪", "does not understand others' emotions", SOCIAL),
    ("缺乏目光交流", "poor eye contact", SOCIAL),
    ("不会安慰他人", "does not comfort others", SOCIAL),
    ("不会模仿他人动作", "does not imitate others' actions", SOCIAL),
    ("不参与假装游戏", "no pretend play", SOCIAL),
    ("对呼唤缺乏反应", "little response when called", SOCIAL),
    ("不会寻求帮助", "does not seek help", SOCIAL),
    ("缺乏面部表情", "limited facial expressions", SOCIAL),
    ("不会与人打招呼", "does not greet people", SOCIAL),
    ("不懂轮流等待", "trouble taking turns", SOCIAL),
    ("难以理解手势含义", "difficulty understanding gestures", SOCIAL),
    ("不会分享玩具", "does not share toys", SOCIAL),
    ("对陌生人反应异常", "abnormal response to strangers", SOCIAL),
    ("难以参与集体活动", "difficulty joining group activities", SOCIAL),
    ("重复拍手或挥动手臂", "repetitive hand flapping", REPET),
    ("反复摇晃身体", "body rocking", REPET),
    ("旋转物体", "spinning objects", REPET),
    ("排列玩具或物品", "lining up toys", REPET),
    ("坚持走相同路线", "insistence on same routes", REPET),
    ("拒绝日常安排的改变", "resists changes in daily routine", REPET),
    ("重复开关门", "repeatedly opening and closing doors", REPET),
    ("凝视旋转的物体", "staring at spinning objects", REPET),
    ("踮着脚尖走路", "walking on tiptoes", REPET),
    ("反复闻嗅物品", "repetitive sniffing of objects", REPET),
    ("兴趣范围狭窄", "narrow range of interests", REPET),
    ("异常依恋特定物品", "unusual attachment to specific objects", REPET),
    ("重复说特定词语", "repeating specific words", REPET),
    ("仪式化行为", "ritualistic behaviors", REPET),
    ("过度关注物体部件", "preoccupation with parts of objects", REPET),
    ("刻板的手部动作", "stereotyped hand movements", REPET),
    ("原地转圈", "spinning in circles", REPET),
    ("反复敲打物品", "banging objects repeatedly", REPET),
    ("对某些声音异常着迷", "unusual fascination with certain sounds", REPET),
    ("反复按压开关", "repeatedly pressing switches", REPET),
    ("咬手或咬物品", "biting hands or objects", REPET),
    ("对物品摆放顺序的强迫要求", "compulsive demand for object order", REPET),
    ("语言发育迟缓", "delayed language development", OTHER),
    ("鹦鹉学舌式语言", "echolalia", OTHER),
    ("人称代词混用", "pronoun reversal", OTHER),
    ("语调平板单一", "flat monotone speech", OTHER),
    ("对疼痛反应异常", "abnormal response to pain", OTHER),
    ("对声音过度敏感", "oversensitive to sounds", OTHER),
    ("严重挑食", "severely picky eating", OTHER),
    ("睡眠障碍", "sleep problems", OTHER),
    ("情绪爆发难以安抚", "hard-to-soothe emotional outbursts", OTHER),
    ("自伤行为", "self-injurious behavior", OTHER),
    ("多动不安", "hyperactivity", OTHER),
    ("注意力难以集中", "difficulty concentrating", OTHER),
    ("动作笨拙", "clumsiness", OTHER),
    ("大小便训练困难", "toilet training difficulties", OTHER),
    ("对光线异常敏感", "unusual sensitivity to light", OTHER),
    ("无故大笑或哭闹", "laughing or crying for no reason", OTHER),
    ("攻击行为", "aggressive behavior", OTHER),
    ("害怕无害的物体", "fear of harmless objects", OTHER),
    ("对危险缺乏恐惧", "lack of fear of real dangers", OTHER),
    ("进食行为异常", "abnormal eating behaviors", OTHER),
    ("不会进行对视", "without eye contact", SOCIAL),
    ("很少微笑", "rarely smile", SOCIAL),
]

SYM_ID = {zh: f"symptom{i}" for i, (zh, _, _) in enumerate(SYMPTOMS, start=1)}


# --------------------------------------------------------------------------
# diagnostic standards: 43 instances across the four standard classes
# --------------------------------------------------------------------------

SI = "StandardOfImpairmentsInSocialInteraction"
RB = "StandardOfRepetitiveBehavior"
DO = "StandardOfDevelopmentalOnset"
FI = "StandardOfFunctionalImpairment"

STANDARDS = [
    ("眼神接触、手势、面部表情、身体定位或言语语调等方面的缺乏、减少或不合规的使用", SI,
     ["不会进行对视", "缺乏目光交流", "缺乏面部表情"]),
    ("社交情感互动缺陷，无法进行正常的你来我往的对话", SI, ["不理解他人情绪"]),
    ("分享兴趣、情绪或情感的减少", SI, ["不愿与他人分享兴趣"]),
    ("不能主动发起或回应社交互动", SI, ["对名字无反应", "对呼唤缺乏反应"]),
    ("非言语交流行为的缺陷，言语和非言语交流整合困难", SI, []),
    ("理解和使用手势的缺陷", SI, ["难以理解手势含义", "不会用手指物示意"]),
    ("面部表情和非言语交流的完全缺乏", SI, ["缺乏面部表情"]),
    ("发展、维持和理解人际关系的缺陷", SI, ["不能建立同伴关系"]),
    ("难以根据不同社交情境调整自身行为", SI, []),
    ("难以参与想象性游戏或难以结交朋友", SI, ["不参与假装游戏"]),
    ("对同伴缺乏兴趣", SI, ["喜欢独自玩耍"]),
    ("社交性微笑和情感表达的缺乏或减少", SI, ["缺乏社交性微笑", "很少微笑"]),
    ("共同注意能力的缺陷，不会追随他人的目光或手指指向", SI, []),
    ("依恋关系发展异常，对养育者缺乏依恋行为", SI, []),
    ("刻板或重复的躯体运动、物体使用或言语", RB, ["重复拍手或挥动手臂", "刻板的手部动作"]),
    ("排列玩具或翻转物品等简单刻板动作", RB, ["排列玩具或物品"]),
    ("重复他人言语或鹦鹉学舌式语言", RB, ["鹦鹉学舌式语言", "重复说特定词语"]),
    ("坚持相同性，僵化地遵守常规，拒绝日常安排的改变", RB, ["拒绝日常安排的改变"]),
    ("仪式化的言语或非言语行为模式", RB, ["仪式化行为"]),
    ("微小的变化引起极端痛苦", RB, []),
    ("思维僵化，难以转换", RB, []),
    ("刻板的问候仪式", RB, []),
    ("每天坚持走相同路线或吃相同食物", RB, ["坚持走相同路线"]),
    ("高度受限的固定兴趣，其强度或专注度异常", RB, ["兴趣范围狭窄"]),
    ("对不寻常物体的强烈依恋或专注", RB, ["异常依恋特定物品"]),
    ("过度局限或持续的特殊兴趣", RB, []),
    ("对感觉输入的过度反应或反应不足", RB, ["对声音过度敏感", "对光线异常敏感"]),
    ("对疼痛或温度的明显漠视，对特定声音或质地的不良反应", RB, ["对疼痛反应异常"]),
    ("过度嗅闻或触摸物体，对光线或运动的视觉迷恋", RB, ["反复闻嗅物品", "凝视旋转的物体"]),
    ("症状必须存在于发育早期阶段", DO, []),
    ("症状可能直到社交需求超过其有限能力时才完全显现", DO, []),
    ("症状可能在后期被学习到的策略所掩盖", DO, []),
    ("发育里程碑延迟在生命最初几年已经出现", DO, ["语言发育迟缓"]),
    ("三岁以前起病并表现出发育异常", DO, []),
    ("早期语言和社交发育落后于同龄儿童", DO, ["语言发育迟缓"]),
    ("症状导致社交、职业或其他重要功能领域的临床显著损害", FI, []),
    ("症状显著影响日常生活自理能力", FI, []),
    ("症状导致学业功能显著受损", FI, []),
    ("症状导致家庭生活显著困难", FI, []),
    ("症状影响同伴关系和集体活动参与", FI, ["难以参与集体活动"]),
    ("功能损害不能用智力发育障碍更好地解释", FI, []),
    ("社交交流缺陷超出总体发育水平的预期", FI, []),
    ("需要区别于言语和语言发育障碍等其他疾病", FI, []),
]

STD_ID = {text: f"standard{i}" for i, (text, _, _) in enumerate(STANDARDS, start=1)}


# --------------------------------------------------------------------------
# diseases: 49 ASD-relevant instances
# --------------------------------------------------------------------------

ASD_CORE = [
    # id suffix, zh, en, class, icd, sctid, synonyms
    ("孤独症", "Autism", "AutismSpectrumDisorder", "F84.0", "408856003",
     ["自闭症", "孤独性障碍"]),
    ("儿童孤独症", "Childhood autism", "ChildhoodAutism", "F84.0", "708037001",
     ["儿童自闭症"]),
    ("孤独症谱系障碍", "Autism spectrum disorder", "AutismSpectrumDisorder", "F84.0",
     "35919005", ["自闭症谱系障碍"]),
    ("阿斯伯格综合征", "Asperger's syndrome", "AspergersSyndrome", "F84.5", "23560001",
     ["阿斯伯格综合症", "亚斯伯格症"]),
    ("非典型孤独症", "Atypical autism", "AtypicalAutism", "F84.1", "43614003", []),
    ("雷特综合征", "Rett syndrome", "RettSyndrome", "F84.2", "68618008", ["Rett综合征"]),
    ("非典型雷特综合征", "Atypical Rett syndrome", "RettSyndrome", "F84.2",
     "770790004", []),
    ("童年瓦解性障碍", "Childhood disintegrative disorder",
     "ChildhoodDisintegrativeDisorder", "F84.3", "231536004", ["婴儿痴呆"]),
    ("多动障碍伴智力低下和刻板动作", "Overactive disorder with intellectual disability",
     "OveractiveDisorderWithStereotypedMovements", "F84.4", "432091002", []),
    ("其他广泛性发育障碍", "Other pervasive developmental disorder",
     "PervasiveDevelopmentalDisorder", "F84.8", "231537008", []),
    ("未特定的广泛性发育障碍", "Pervasive developmental disorder, unspecified",
     "UnspecifiedPervasiveDevelopmentalDisorder", "F84.9", "723332005", ["PDD-NOS"]),
    ("高功能孤独症", "High-functioning autism", "AutismSpectrumDisorder", "F84.0",
     "766824003", []),
]

RELATED = [
    ("特定性言语构音障碍", "Specific speech articulation disorder", "F80.0", "229746007"),
    ("表达性语言障碍", "Expressive language disorder", "F80.1", "229682008"),
    ("感受性语言障碍", "Receptive language disorder", "F80.2", "289168005"),
    ("伴发癫痫的获得性失语", "Acquired aphasia with epilepsy", "F80.3", "230442008"),
    ("特定性阅读障碍", "Specific reading disorder", "F81.0", "59770006"),
    ("特定性拼写障碍", "Specific spelling disorder", "F81.1", "268738003"),
    ("特定性计算技能障碍", "Specific disorder of arithmetical skills", "F81.2", "47916000"),
    ("混合性学习技能障碍", "Mixed disorder of scholastic skills", "F81.3", "268740008"),
    ("特定性运动功能发育障碍", "Specific developmental disorder of motor function",
     "F82", "29164008"),
    ("混合性特定发育障碍", "Mixed specific developmental disorders", "F83", "268743005"),
    ("轻度精神发育迟滞", "Mild intellectual disability", "F70", "86765009"),
    ("中度精神发育迟滞", "Moderate intellectual disability", "F71", "61152003"),
    ("重度精神发育迟滞", "Severe intellectual disability", "F72", "40700009"),
    ("极重度精神发育迟滞", "Profound intellectual disability", "F73", "31216003"),
    ("注意缺陷多动障碍", "Attention-deficit hyperactivity disorder", "F90.0", "406506008"),
    ("多动性品行障碍", "Hyperkinetic conduct disorder", "F90.1", "68156006"),
    ("抽动障碍", "Tic disorder", "F95", "569980004"),
    ("短暂性抽动障碍", "Transient tic disorder", "F95.0", "723939005"),
    ("慢性运动或发声抽动障碍", "Chronic motor or vocal tic disorder", "F95.1", "60333009"),
    ("图雷特综合征", "Tourette syndrome", "F95.2", "5158005"),
    ("选择性缄默症", "Selective mutism", "F94.0", "71961003"),
    ("童年反应性依恋障碍", "Reactive attachment disorder of childhood", "F94.1", "397932003"),
    ("童年脱抑制性依恋障碍", "Disinhibited attachment disorder of childhood", "F94.2",
     "82636009"),
    ("儿童分离焦虑障碍", "Separation anxiety disorder of childhood", "F93.0", "724703002"),
    ("童年恐怖性焦虑障碍", "Phobic anxiety disorder of childhood", "F93.1", "109006"),
    ("童年社交性焦虑障碍", "Social anxiety disorder of childhood", "F93.2", "191711001"),
    ("非器质性遗尿症", "Nonorganic enuresis", "F98.0", "51186005"),
    ("非器质性遗粪症", "Nonorganic encopresis", "F98.1", "18393005"),
    ("婴幼儿喂食障碍", "Feeding disorder of infancy and childhood", "F98.2", "79740000"),
    ("异食癖", "Pica of infancy and childhood", "F98.3", "18178006"),
    ("刻板性运动障碍", "Stereotyped movement disorders", "F98.4", "22558005"),
    ("口吃", "Stuttering", "F98.5", "288271000119102"),
    ("言语急促杂乱", "Cluttering", "F98.6", "39423001"),
    ("强迫性障碍", "Obsessive-compulsive disorder", "F42", "191736004"),
    ("脆性X综合征", "Fragile X syndrome", "Q99.2", "613003"),
    ("结节性硬化症", "Tuberous sclerosis", "Q85.1", "7199000"),
    ("天使综合征", "Angelman syndrome", "Q93.5", "76880004"),
]

assert len(ASD_CORE) + len(RELATED) == 49, len(ASD_CORE) + len(RELATED)


def build_diseases():
    rows = []
    core_symptoms = {
        "孤独症": ["不会进行对视", "很少微笑", "语言发育迟缓", "重复拍手或挥动手臂",
                 "排列玩具或物品", "拒绝日常安排的改变", "缺乏目光交流", "喜欢独自玩耍"],
        "儿童孤独症": ["对名字无反应", "不参与假装游戏", "语言发育迟缓", "缺乏社交性微笑"],
        "孤独症谱系障碍": ["不会进行对视", "兴趣范围狭窄", "仪式化行为", "不能建立同伴关系"],
        "阿斯伯格综合征": ["兴趣范围狭窄", "不懂轮流等待", "动作笨拙"],
        "雷特综合征": ["刻板的手部动作", "语言发育迟缓"],
        "童年瓦解性障碍": ["语言发育迟缓", "大小便训练困难"],
        "高功能孤独症": ["兴趣范围狭窄", "不理解他人情绪"],
    }
    core_standards = {
        "孤独症": ["眼神接触、手势、面部表情、身体定位或言语语调等方面的缺乏、减少或不合规的使用",
                 "坚持相同性，僵化地遵守常规，拒绝日常安排的改变",
                 "症状必须存在于发育早期阶段",
                 "症状导致社交、职业或其他重要功能领域的临床显著损害"],
        "儿童孤独症": ["不能主动发起或回应社交互动", "三岁以前起病并表现出发育异常"],
        "孤独症谱系障碍": ["社交情感互动缺陷，无法进行正常的你来我往的对话",
                     "刻板或重复的躯体运动、物体使用或言语"],
        "阿斯伯格综合征": ["高度受限的固定兴趣，其强度或专注度异常",
                      "功能损害不能用智力发育障碍更好地解释"],
    }
    core_intro = {
        "孤独症": {"zh": "孤独症是一种起病于婴幼儿期的神经发育障碍，以社会交往障碍、交流障碍和局限重复的行为兴趣为主要特征",
                 "en": "Autism is a neurodevelopmental disorder with onset in early childhood, "
                       "characterized by impaired social interaction, communication deficits, "
                       "and restricted repetitive behaviors"},
        "儿童孤独症": {"zh": "儿童孤独症起病于3岁以前，男孩多见，主要表现为社会交往和交流障碍以及刻板行为",
                   "en": "Childhood autism begins before age 3, is more common in boys, and "
                         "presents with social, communication, and behavioral impairments"},
        "孤独症谱系障碍": {"zh": "孤独症谱系障碍是一组以社交沟通缺陷和局限重复行为为核心症状的神经发育障碍的总称",
                     "en": "Autism spectrum disorder is a group of neurodevelopmental "
                           "conditions with social communication deficits and restricted "
                           "repetitive behaviors"},
        "阿斯伯格综合征": {"zh": "阿斯伯格综合征以社会交往障碍和局限兴趣为特征，无明显语言和智力发育迟缓",
                     "en": "Asperger's syndrome features social interaction difficulties and "
                           "restricted interests without marked language or cognitive delay"},
        "雷特综合征": {"zh": "雷特综合征几乎只见于女孩，早期发育正常后出现技能倒退和刻板的手部动作",
                   "en": "Rett syndrome occurs almost only in girls, with regression after "
                         "normal early development and stereotyped hand movements"},
        "童年瓦解性障碍": {"zh": "童年瓦解性障碍在至少两年正常发育后出现已获得技能的丧失",
                     "en": "Childhood disintegrative disorder involves loss of acquired "
                           "skills after at least two years of normal development"},
    }
    core_pathogeny = {
        "孤独症": "病因尚未完全明确，遗传因素与环境因素共同作用",
        "儿童孤独症": "遗传因素与围产期不利因素共同作用",
        "孤独症谱系障碍": "遗传与环境因素共同作用，神经发育异常",
        "阿斯伯格综合征": "病因不明，可能与遗传因素有关",
        "雷特综合征": "多由MECP2基因突变引起",
        "童年瓦解性障碍": "病因不明",
    }
    core_groups = {
        "孤独症": "儿童，男孩多于女孩",
        "儿童孤独症": "3岁以前起病的婴幼儿",
        "孤独症谱系障碍": "儿童和青少年",
        "阿斯伯格综合征": "学龄期儿童，男性多见",
        "雷特综合征": "女性婴幼儿",
        "童年瓦解性障碍": "2岁以后的幼儿",
    }
    core_complications = {
        "孤独症": ["轻度精神发育迟滞", "注意缺陷多动障碍"],
        "儿童孤独症": ["轻度精神发育迟滞"],
        "孤独症谱系障碍": ["强迫性障碍"],
    }
    core_interventions = {
        "孤独症": ["回合式教学", "社交技能训练", "应用行为分析", "家长实施干预", "关键反应训练"],
        "儿童孤独症": ["回合式教学", "自然情境干预"],
        "孤独症谱系障碍": ["社交技能训练", "同伴介入教学与干预"],
        "阿斯伯格综合征": ["社交技能训练", "社交叙事"],
    }
    label_to_id = {}
    for i, (zh, enl, cls, icd, sct, syn) in enumerate(ASD_CORE, start=1):
        label_to_id[zh] = f"disease{i}"
    for j, (zh, enl, icd, sct) in enumerate(RELATED, start=len(ASD_CORE) + 1):
        label_to_id[zh] = f"disease{j}"

    for i, (zh, enl, cls, icd, sct, syn) in enumerate(ASD_CORE, start=1):
        row = {
            "id": f"disease{i}",
            "class": cls,
            "Label": {"zh": zh, "en": enl},
            "SCTID": sct,
            "ICD10Code": icd,
            "Synonym": syn,
        }
        if zh in core_intro:
            row["Introduction"] = core_intro[zh]
        if zh in core_pathogeny:
            row["Pathogeny"] = {"zh": core_pathogeny[zh]}
        if zh in core_groups:
            row["PatientGroups"] = {"zh": core_groups[zh]}
        if zh in core_symptoms:
            row["symptoms"] = [SYM_ID[s] for s in core_symptoms[zh]]
        if zh in core_standards:
            row["standards"] = [STD_ID[s] for s in core_standards[zh]]
        if zh in core_complications:
            row["complications"] = [label_to_id[d] for d in core_complications[zh]]
        if zh in core_interventions:
            row["interventions"] = [INT_ID[m] for m in core_interventions[zh]]
        rows.append(row)
    for j, (zh, enl, icd, sct) in enumerate(RELATED, start=len(ASD_CORE) + 1):
        rows.append(
            {
                "id": f"disease{j}",
                "class": "Disease",
                "Label": {"zh": zh, "en": enl},
                "SCTID": sct,
                "ICD10Code": icd,
                "Synonym": [],
            }
        )
    return rows


# --------------------------------------------------------------------------
# interventions: 15 evidence-based practices
# --------------------------------------------------------------------------

INTERVENTIONS = [
    ("回合式教学", "Discrete Trial Training", "将技能分解为小步骤并通过重复训练进行教学的结构化方法"),
    ("社交技能训练", "Social Skills Training", "通过小组或个别指导提高社交互动能力的干预方法"),
    ("同伴介入教学与干预", "Peer-Based Instruction and Intervention",
     "让发育正常的同伴参与教学以促进社交互动的干预方法"),
    ("应用行为分析", "Applied Behavior Analysis", "运用行为学习原理改善社会意义行为的系统干预方法"),
    ("关键反应训练", "Pivotal Response Training", "针对动机等关键领域进行的自然情境行为干预"),
    ("自然情境干预", "Naturalistic Intervention", "在日常活动和情境中实施的干预策略"),
    ("家长实施干预", "Parent-Implemented Intervention", "由家长在专业指导下于家庭环境中实施的干预"),
    ("视觉支持", "Visual Supports", "利用图片、时间表等视觉材料辅助理解和沟通"),
    ("社交叙事", "Social Narratives", "通过描述社交情境的短文帮助理解社交线索"),
    ("示范法", "Modeling", "通过演示目标行为供学习者模仿的教学方法"),
    ("视频示范", "Video Modeling", "通过观看目标行为录像进行学习的干预方法"),
    ("正强化法", "Positive Reinforcement", "在目标行为后给予奖励以增加该行为发生率"),
    ("提示法", "Prompting", "提供言语、手势或身体辅助帮助完成目标行为"),
    ("任务分析", "Task Analysis", "将复杂活动分解为连续小步骤进行教学"),
    ("功能性行为评估", "Functional Behavior Assessment", "分析问题行为的前因后果以制定干预计划"),
]

INT_ID = {zh: f"intervention{i}" for i, (zh, _, _) in enumerate(INTERVENTIONS, start=1)}


# --------------------------------------------------------------------------
# screening tools, questions, options
# --------------------------------------------------------------------------

SCALE_OPTIONS = [("从不", 0.0), ("偶尔", 1.0), ("经常", 2.0)]
YESNO_OPTIONS = [("否", 0.0), ("是", 1.0)]
CARS_OPTIONS = [("无异常", 1.0), ("轻度异常", 2.0), ("中度异常", 3.0), ("重度异常", 4.0)]
PEP_OPTIONS = [("不能完成", 1.0), ("部分完成", 2.0), ("顺利完成", 3.0)]

ABC_QUESTIONS = [
    "喜欢长时间旋转自己的身体",
    "重复拍手或挥动手臂",
    "不会与他人进行对视",
    "对周围的声音过度敏感",
    "喜欢排列玩具或物品",
    "踮着脚尖走路",
    "对呼唤名字缺乏反应",
    "很少对他人微笑",
    "拒绝日常安排的改变",
    "语言发育明显迟缓",
]

CABS_QUESTIONS = [
    "不易与别人混在一起玩耍",
    "听而不闻，好像是聋子一样",
    "强烈反抗学习新的东西",
    "不顾危险，对危险缺乏恐惧",
    "不能接受日常习惯的变化",
    "以手势表达需要而不用言语",
    "莫名其妙地笑或无故大笑",
    "不喜欢被人拥抱或抚摸",
]

MCHAT_QUESTIONS = [
    "孩子是否不会用手指物示意",
    "孩子是否不参与假装游戏",
    "孩子是否不会模仿他人动作",
    "孩子是否对名字无反应",
    "孩子是否不会进行对视",
    "孩子是否对别的小朋友缺乏兴趣",
    "孩子是否不会把物品拿给你看",
    "孩子是否踮着脚尖走路",
]

CARS_QUESTIONS = [
    "眼神接触、手势和面部表情的使用存在缺乏或减少",
    "与他人的情感交流和模仿动作的能力异常",
    "躯体运用刻板，反复出现怪异动作",
    "言语交流的语调和节奏异常",
]

PEP_QUESTIONS = [
    "能够与他人进行目光对视",
    "能够模仿简单动作",
    "能够用手指物表达需要",
    "能够参与假装游戏",
]

# (id, zh name, en name, author, users, age_min, age_max, time, language)
GENERIC_TOOLS = [
    ("tool_mchatrf", "修订版幼儿孤独症筛查量表随访版", "M-CHAT-R/F", "Robins",
     ["parent"], 1.3, 2.5, 10, "en"),
    ("tool_scq", "社交沟通问卷", "Social Communication Questionnaire", "Rutter",
     ["parent"], 4.0, 18.0, 10, "en"),
    ("tool_srs2", "社交反应量表第二版", "Social Responsiveness Scale, 2nd Edition",
     "Constantino", ["parent", "teacher"], 2.5, 18.0, 20, "en"),
    ("tool_assq", "孤独症谱系筛查问卷", "Autism Spectrum Screening Questionnaire",
     "Ehlers", ["parent", "teacher"], 7.0, 16.0, 10, "en"),
    ("tool_cast", "儿童孤独症谱系测试", "Childhood Autism Spectrum Test",
     "Scott", ["parent"], 4.0, 11.0, 10, "en"),
    ("tool_stat", "孤独症两岁筛查工具", "Screening Tool for Autism in Toddlers",
     "Stone", ["clinician"], 2.0, 3.0, 20, "en"),
    ("tool_qchat", "幼儿孤独症量化检查表", "Quantitative Checklist for Autism in Toddlers",
     "Allison", ["parent"], 1.5, 2.5, 10, "en"),
    ("tool_aq", "孤独症谱系商数儿童版", "Autism Spectrum Quotient - Children's Version",
     "Baron-Cohen", ["parent"], 4.0, 11.0, 15, "en"),
    ("tool_gars3", "吉列姆孤独症评定量表第三版", "Gilliam Autism Rating Scale, 3rd Edition",
     "Gilliam", ["parent", "teacher"], 3.0, 22.0, 10, "en"),
    ("tool_isaa", "印度孤独症评估量表", "Indian Scale for Assessment of Autism",
     "NIEPID", ["clinician"], 3.0, 22.0, 25, "en"),
    ("tool_pddst", "广泛性发育障碍筛查测验第二版", "PDD Screening Test-II",
     "Siegel", ["parent"], 1.5, 4.0, 15, "en"),
    ("tool_raadsr", "成人孤独症谱系诊断量表修订版", "RAADS-R",
     "Ritvo", ["self"], 18.0, 60.0, 30, "en"),
    ("tool_csbsdp", "沟通和象征行为发展量表", "CSBS-DP Infant-Toddler Checklist",
     "Wetherby", ["parent"], 0.5, 2.0, 10, "en"),
    ("tool_esat", "孤独症早期筛查量表", "Early Screening of Autistic Traits",
     "Dietz", ["parent"], 1.2, 3.0, 10, "en"),
    ("tool_asrs", "孤独症谱系评定量表", "Autism Spectrum Rating Scales", "Goldstein",
     ["parent", "teacher"], 2.0, 18.0, 15, "zh"),
]


def build_screening():
    tools, questions, options = [], [], []

    def add_tool(tool_id, zh, enl, author, users, lo, hi, minutes, lang, q_texts,
                 opt_set, polarity, intro, screens_for):
        q_ids = []
        for qi, text in enumerate(q_texts, start=1):
            qid = f"q_{tool_id[5:]}_{qi}"
            o_ids = []
            for oi, (otext, score) in enumerate(opt_set, start=1):
                oid = f"opt_{tool_id[5:]}_{qi}_{oi}"
                options.append(
                    {"id": oid, "question": qid, "Label": {"zh": otext}, "Score": score}
                )
                o_ids.append(oid)
            questions.append(
                {"id": qid, "tool": tool_id, "Label": {"zh": text}, "options": o_ids}
            )
            q_ids.append(qid)
        per_q = [score for _, score in opt_set]
        if polarity == "ascending_risk":
            min_total = min(per_q) * len(q_texts)
            max_total = max(per_q) * len(q_texts)
            boundary = float(int((min_total + max_total) // 2 + 1))
            rule = "将所有选项得分相加，总分大于等于筛查界值提示存在孤独症风险"
        else:
            min_total = min(per_q) * len(q_texts)
            max_total = max(per_q) * len(q_texts)
            boundary = float(int((min_total + max_total) // 2))
            rule = "将所有选项得分相加，总分小于等于筛查界值提示存在孤独症风险"
        assert min_total < boundary <= max_total if polarity == "ascending_risk" else (
            min_total <= boundary < max_total
        ), tool_id
        tools.append(
            {
                "id": tool_id,
                "Label": {"zh": zh, "en": enl},
                "Introduction": {"zh": intro},
                "Author": author,
                "User": users,
                "AgeMin": lo,
                "AgeMax": hi,
                "Time": minutes,
                "Rule": rule,
                "ScreeningBoundary": boundary,
                "Polarity": polarity,
                "Language": lang,
                "BoundaryNote": "fixture placeholder boundary, not a clinical cutoff",
                "questions": q_ids,
                "screensFor": screens_for,
            }
        )

    add_tool("tool_abc", "孤独症行为量表", "Autism Behavior Checklist", "Krug",
             ["parent"], 1.5, 35.0, 15, "zh", ABC_QUESTIONS, SCALE_OPTIONS,
             "ascending_risk",
             "由家长或照料者填写的孤独症行为筛查量表，覆盖感觉、交往、运动、语言和自理五个方面",
             ["disease1"])
    add_tool("tool_cabs", "克氏孤独症行为量表", "Clancy Autism Behavior Scale", "Clancy",
             ["parent", "teacher"], 2.0, 15.0, 10, "zh", CABS_QUESTIONS, SCALE_OPTIONS,
             "ascending_risk",
             "简便易行的孤独症行为初筛量表，适合家长和教师快速填写",
             ["disease2"])
    add_tool("tool_mchat", "幼儿孤独症筛查量表", "Modified Checklist for Autism in Toddlers",
             "Robins", ["parent"], 1.3, 2.5, 10, "en", MCHAT_QUESTIONS, YESNO_OPTIONS,
             "ascending_risk",
             "针对16至30月龄幼儿的孤独症早期筛查问卷，由家长逐项回答是或否",
             ["disease2"])
    add_tool("tool_cars2", "儿童孤独症评定量表第二版", "Childhood Autism Rating Scale, 2nd Edition",
             "Schopler", ["clinician"], 2.0, 12.0, 30, "zh", CARS_QUESTIONS, CARS_OPTIONS,
             "ascending_risk",
             "由专业人员根据观察对儿童进行评定的孤独症评定量表",
             ["disease1", "disease3"])
    add_tool("tool_pep3", "孤独症儿童心理教育评核第三版", "Psychoeducational Profile, 3rd Edition",
             "Schopler", ["clinician"], 0.5, 7.0, 45, "zh", PEP_QUESTIONS, PEP_OPTIONS,
             "descending_risk",
             "评估孤独症儿童发展能力的工具，得分越低提示发展风险越高",
             ["disease1"])

    sym_texts = [zh for zh, _, _ in SYMPTOMS]
    for idx, (tid, zh, enl, author, users, lo, hi, minutes, lang) in enumerate(
        GENERIC_TOOLS
    ):
        offset = (idx * 4) % len(sym_texts)
        picked = [sym_texts[(offset + j) % len(sym_texts)] for j in range(4)]
        q_texts = [f"孩子是否{t}" for t in picked]
        add_tool(tid, zh, enl, author, users, lo, hi, minutes, lang, q_texts,
                 SCALE_OPTIONS, "ascending_risk",
                 f"用于孤独症相关行为筛查的问卷（{enl}），由{('家长' if 'parent' in users else '专业人员')}填写",
                 ["disease3"] if idx % 2 == 0 else ["disease1"])
    assert len(tools) == 20, len(tools)
    return tools, questions, options


# --------------------------------------------------------------------------
# experts: hospitals (with seeded duplicates), physicians, divisions
# --------------------------------------------------------------------------

HOSPITALS = [
    ("hosp01", "北京安华儿童医院", "北京市海淀区知春路100号", "010-62000001",
     "三级甲等", 39.975, 116.330, "110108"),
    ("hosp02", "北京安华儿童医院知春路院区", "北京市海淀区知春路100号院内", "010-62000001",
     "三级甲等", 39.975, 116.330, "110108"),  # same phone -> fuses with hosp01
    ("hosp03", "北京晨光精神卫生中心", "北京市西城区月坛南街15号", "010-68000002",
     "三级乙等", 39.905, 116.345, "110102"),
    ("hosp04", "北京朝阳儿童发展医院", "北京市朝阳区望京东路8号", "010-64000003",
     "二级甲等", 39.995, 116.470, "110105"),
    ("hosp05", "北京东城妇幼保健院", "北京市东城区交道口大街21号", "010-64000004",
     "二级乙等", 39.940, 116.405, "110101"),
    ("hosp06", "南京白云脑科医院", "南京市鼓楼区广济路264号", "025-82000005",
     "三级甲等", 32.055, 118.776, "320106"),
    ("hosp07", "南京白云脑科医院儿童心理科", "南京市鼓楼区广济路264号", "025-82000088",
     "三级甲等", 32.055, 118.776, "320106"),  # same address -> fuses with hosp06
    ("hosp08", "南京秦淮儿童医院", "南京市秦淮区中山南路318号", "025-84000006",
     "三级乙等", 32.030, 118.780, "320104"),
    ("hosp09", "上海徐汇精神卫生中心", "上海市徐汇区宜山路600号", "021-64000007",
     "三级甲等", 31.179, 121.444, "310104"),
    ("hosp10", "上海杨浦儿童医学中心", "上海市杨浦区控江路1500号", "021-65000008",
     "三级甲等", 31.297, 121.520, "310110"),
    ("hosp11", "上海闵行妇幼保健院", "上海市闵行区莘松路170号", "021-54000009",
     "二级甲等", 31.110, 121.380, "310112"),
    ("hosp12", "广州天河儿童医院", "广州市天河区天河北路28号", "020-38000010",
     "三级甲等", 23.140, 113.330, "440106"),
    ("hosp13", "广州白云心理医院", "广州市白云区机场路1038号", "020-86000011",
     "二级甲等", 23.180, 113.270, "440111"),
]

PHYSICIANS = [
    # id, name, title, specialty, department, hospital, up, down
    ("phy01", "王建国", "主任医师", "儿童孤独症谱系障碍的早期诊断与综合干预", "儿童精神科", "hosp01", 12, 1),
    ("phy02", "李梅", "副主任医师", "儿童发育行为疾病评估", "儿童保健科", "hosp01", 8, 0),
    ("phy03", "张晓峰", "主治医师", "孤独症儿童语言康复训练", "发育行为儿科", "hosp01", 20, 2),
    ("phy04", "王建国", "主任医师", "儿童孤独症早期诊断", "儿童精神科", "hosp02", 3, 0),
    ("phy05", "陈志强", "主任医师", "儿童精神障碍诊疗", "精神科", "hosp03", 15, 3),
    ("phy06", "刘芳", "住院医师", "儿童心理评估", "心理科", "hosp03", 2, 0),
    ("phy07", "赵丽华", "副主任医师", "发育迟缓与孤独症干预", "儿童保健科", "hosp04", 9, 1),
    ("phy08", "孙涛", "主治医师", "儿童行为问题咨询", "发育行为儿科", "hosp04", 5, 5),
    ("phy09", "周静", "主治医师", "婴幼儿发育筛查", "儿童保健科", "hosp05", 4, 0),
    ("phy10", "吴国平", "主任医师", "儿童孤独症与多动障碍", "儿童心理科", "hosp06", 25, 2),
    ("phy11", "郑海燕", "副主任医师", "孤独症谱系障碍康复", "儿童心理科", "hosp06", 11, 1),
    ("phy12", "吴国平", "主任医师", "儿童孤独症诊疗", "儿童心理科", "hosp07", 6, 0),
    ("phy13", "冯涛", "住院医师", "儿童心理行为评估", "儿童心理科", "hosp06", 1, 0),
    ("phy14", "蒋雪梅", "主治医师", "儿童发育评估与干预", "儿童保健科", "hosp08", 7, 2),
    ("phy15", "韩磊", "主治医师", "儿童语言发育障碍", "儿童保健科", "hosp08", 7, 2),
    ("phy16", "沈丽", "主任医师", "成人与儿童孤独症诊断", "精神科", "hosp09", 18, 4),
    ("phy17", "杨帆", "副主任医师", "儿童情绪与行为障碍", "儿童精神科", "hosp09", 10, 0),
    ("phy18", "朱伟", "主任医师", "儿童神经发育障碍", "发育行为儿科", "hosp10", 22, 3),
    ("phy19", "徐静怡", "主治医师", "孤独症早期筛查", "儿童保健科", "hosp10", 9, 0),
    ("phy20", "高翔", "住院医师", "儿童康复治疗", "康复科", "hosp10", 0, 0),
    ("phy21", "林小红", "副主任医师", "婴幼儿发育行为评估", "儿童保健科", "hosp11", 6, 1),
    ("phy22", "黄志明", "主任医师", "孤独症谱系障碍综合干预", "儿童精神科", "hosp12", 30, 5),
    ("phy23", "罗敏", "副主任医师", "儿童心理发育障碍", "心理科", "hosp12", 12, 2),
    ("phy24", "许文博", "主治医师", "儿童行为干预", "发育行为儿科", "hosp12", 8, 1),
    ("phy25", "邓秀兰", "主治医师", "儿童心理咨询", "心理科", "hosp13", 3, 1),
    ("phy26", "曾凡", "住院医师", "儿童发育筛查", "儿童保健科", "hosp13", 1, 0),
]

EXPERT_IN = {"phy01": ["disease1"], "phy10": ["disease1", "disease2"],
             "phy22": ["disease1", "disease4"]}

DIVISIONS = [
    # code, name, level, parent, population, lat, lng, aliases
    ("110000", "北京市", "province", None, 21893095, 39.9042, 116.4074, ["北京"]),
    ("110100", "北京市区", "city", "110000", 21893095, 39.9042, 116.4074, []),
    ("110101", "东城区", "district", "110100", 708829, 39.917, 116.416, []),
    ("110102", "西城区", "district", "110100", 1106214, 39.912, 116.366, []),
    ("110105", "朝阳区", "district", "110100", 3452460, 39.921, 116.486, []),
    ("110108", "海淀区", "district", "110100", 3133469, 39.956, 116.310, []),
    ("310000", "上海市", "province", None, 24870895, 31.2304, 121.4737, ["上海"]),
    ("310100", "上海市区", "city", "310000", 24870895, 31.2304, 121.4737, []),
    ("310104", "徐汇区", "district", "310100", 1113078, 31.188, 121.437, []),
    ("310110", "杨浦区", "district", "310100", 1242548, 31.260, 121.526, []),
    ("310112", "闵行区", "district", "310100", 2653489, 31.112, 121.382, []),
    ("320000", "江苏省", "province", None, 84748016, 32.0617, 118.7778, ["江苏"]),
    ("320100", "南京市", "city", "320000", 9314685, 32.0603, 118.7969, ["南京"]),
    ("320104", "秦淮区", "district", "320100", 740800, 32.039, 118.795, []),
    ("320106", "鼓楼区", "district", "320100", 940387, 32.066, 118.770, []),
    ("320500", "苏州市", "city", "320000", 12748262, 31.2989, 120.5853, ["苏州"]),
    ("320508", "姑苏区", "district", "320500", 951029, 31.311, 120.617, []),
    ("330000", "浙江省", "province", None, 64567588, 30.2741, 120.1551, ["浙江"]),
    ("330100", "杭州市", "city", "330000", 11936010, 30.2741, 120.1551, ["杭州"]),
    ("330106", "西湖区", "district", "330100", 1106998, 30.259, 120.130, []),
    ("440000", "广东省", "province", None, 126012510, 23.1291, 113.2644, ["广东"]),
    ("440100", "广州市", "city", "440000", 18676605, 23.1291, 113.2644, ["广州"]),
    ("440103", "荔湾区", "district", "440100", 1238305, 23.126, 113.243, []),
    ("440106", "天河区", "district", "440100", 2241826, 23.125, 113.362, []),
    ("440111", "白云区", "district", "440100", 3742991, 23.157, 113.273, []),
]


# --------------------------------------------------------------------------
# word lists
# --------------------------------------------------------------------------

STOPWORDS = """的 了 是 在 和 与 或 及 也 都 很 这 那 你 我 他 她 它 您 吗 呢 吧 啊 呀 么
之 而 并 到 地 得 着 个 被 把 将 从 向 其 就 还 等
a an the is are was were be been do does did of to in on at for by with and or
your my his her its our their this that
""".split()

DICTIONARY_EXTRA = """
孤独症 自闭症 谱系障碍 谱系 阿斯伯格综合征 雷特综合征 综合征 障碍 儿童 幼儿 婴幼儿
筛查 量表 评估 测评 诊断 标准 诊断标准 干预 方法 干预方法 疗法 训练 康复 治疗
临床表现 症状 表现 病因 别名 同义词 专家 医生 大夫 医院 科室 职称
名字 反应 分享 兴趣 微笑 目光 交流 手指 指物 示意 身体 接触 独自 玩耍 同伴 关系
理解 情绪 安慰 模仿 动作 假装 游戏 呼唤 缺乏 寻求 帮助 面部表情 打招呼 轮流 等待
手势 含义 玩具 陌生人 异常 集体 活动 重复 拍手 挥动 手臂 摇晃 旋转 物体 排列 物品
坚持 相同 相同性 路线 拒绝 日常 安排 改变 开关 凝视 踮着 脚尖 走路 闻嗅 范围 狭窄
依恋 特定 词语 仪式化 仪式 微小 变化 极端 痛苦 思维 僵化 转换 问候 食物 高度 受限
固定 强度 专注 不寻常 强烈 过度 局限 持续 特殊 感觉 输入 疼痛 温度 漠视 声音 质地
不良 触摸 光线 运动 视觉 迷恋 语言 发育 迟缓 鹦鹉学舌 人称 代词 混用 语调 平板
单一 敏感 挑食 严重 睡眠 爆发 安抚 自伤 行为 多动 不安 注意力 集中 笨拙 大小便
困难 无故 大笑 哭闹 攻击 害怕 无害 危险 恐惧 进食 对视 进行 不会 他人 很少
眼神接触 身体定位 言语语调 言语 非言语 方面 减少 不合规 使用 情感 互动 缺陷 正常
你来我往 对话 主动 发起 回应 整合 完全 发展 维持 人际关系 情境 调整 自身 想象性
结交 朋友 共同注意 追随 指向 养育者 躯体 刻板 翻转 简单 遵守 常规 模式 显现 掩盖
策略 里程碑 延迟 生命 最初 几年 三岁 以前 起病 早期 落后 同龄 导致 职业 重要 功能
领域 临床 显著 损害 影响 生活 自理 能力 学业 受损 家庭 参与 智力 解释 超出 总体
水平 预期 区别 疾病 孩子 是否 能够 完成 顺利 偶尔 从不 经常 部分 需要 表达
混在一起 听而不闻 聋子 反抗 学习 东西 不顾 接受 习惯 拥抱 抚摸 莫名其妙 存在
情感交流 节奏 怪异 小朋友 拿给 别人 周围 明显 长时间 喜欢 暗示 没有 不能 难以
不易 社交 社会交往 沟通 发育障碍 广泛性 心理 精神 保健 卫生 中心 儿科 成人
""".split()


def build_dictionary():
    return sorted(w for w in set(DICTIONARY_EXTRA) if len(w) >= 2)


INTENT_LEXICON = [
    "筛查", "测评", "评估", "量表", "自测", "测试", "测一测", "评测",
    "screening", "screen", "assessment", "checklist",
]


# --------------------------------------------------------------------------
# QA patterns
# --------------------------------------------------------------------------


def prop(name: str) -> str:
    return f"<{P}{name}>"


def cls(name: str) -> str:
    return f"<{C}{name}>"


PATTERNS = [
    {
        "id": "symptoms_of_disease",
        "matcher": "{disease}(都有哪些|都有什么|有哪些|有什么)(临床表现|症状|表现)",
        "template": "SELECT ?s WHERE {{ {{disease}} {p} ?s }}".format(p=prop("hasSymptom")),
        "answer_kind": "entity_list",
        "slot_types": {"disease": "Disease"},
        "examples": ["孤独症都有哪些临床表现？", "孤独症谱系障碍有什么症状"],
    },
    {
        "id": "list_interventions",
        "matcher": "(哪些|什么|有哪些)(干预方法|干预手段|疗法)(是有效的|有效|最有效)?",
        "template": "SELECT ?m WHERE {{ ?m <{t}> {c} }}".format(
            t=RDF_TYPE, c=cls("EvidenceBasedPractice")
        ),
        "answer_kind": "entity_list",
        "slot_types": {},
        "examples": ["哪些干预方法是有效的？"],
    },
    {
        "id": "disease_pathogeny",
        "matcher": "{disease}(的)?(病因|发病原因)(是什么|有哪些)?",
        "template": "SELECT ?p WHERE {{ {{disease}} {p} ?p }}".format(p=prop("Pathogeny")),
        "answer_kind": "literal",
        "slot_types": {"disease": "Disease"},
        "examples": ["孤独症的病因是什么？"],
    },
    {
        "id": "patient_groups",
        "matcher": "{disease}(的)?(好发人群|患病人群|高发人群)(是什么|有哪些)?",
        "template": "SELECT ?g WHERE {{ {{disease}} {p} ?g }}".format(
            p=prop("PatientGroups")
        ),
        "answer_kind": "literal",
        "slot_types": {"disease": "Disease"},
        "examples": ["儿童孤独症的好发人群有哪些？"],
    },
    {
        "id": "standard_lookup",
        "matcher": "{disease}(的)?诊断标准(是什么|有哪些)?",
        "template": "SELECT ?st WHERE {{ {{disease}} {p} ?st }}".format(
            p=prop("hasDiagnosticStandard")
        ),
        "answer_kind": "entity_list",
        "slot_types": {"disease": "Disease"},
        "examples": ["孤独症的诊断标准有哪些？"],
    },
    {
        "id": "synonym_lookup",
        "matcher": "{disease}(的)?(别名|别称|同义词)(是什么|有哪些)?",
        "template": "SELECT ?syn WHERE {{ {{disease}} {p} ?syn }}".format(p=prop("Synonym")),
        "answer_kind": "literal",
        "slot_types": {"disease": "Disease"},
        "examples": ["孤独症的别名有哪些？"],
    },
    {
        "id": "icd_lookup",
        "matcher": "{disease}(的)?icd(-10)?(编码|代码)(是什么)?",
        "template": "SELECT ?c WHERE {{ {{disease}} {p} ?c }}".format(p=prop("ICD10Code")),
        "answer_kind": "literal",
        "slot_types": {"disease": "Disease"},
        "examples": ["雷特综合征的ICD编码是什么？"],
    },
    {
        "id": "scale_by_age",
        "matcher": "{age}岁(的)?(孩子|儿童|宝宝)?(可以|适合)?(用|使用|做|填写)(哪些|什么)(筛查)?(量表|工具)",
        "template": (
            "SELECT ?t WHERE {{ ?t {lo} ?lo . ?t {hi} ?hi "
            "FILTER(?lo <= {{age}}) FILTER(?hi >= {{age}}) }}"
        ).format(lo=prop("AgeMin"), hi=prop("AgeMax")),
        "answer_kind": "entity_list",
        "slot_types": {"age": "number"},
        "examples": ["3岁孩子可以用哪些量表？"],
    },
    {
        "id": "expert_by_division",
        "matcher": "{division}(有哪些|有什么|哪里有)(孤独症|自闭症)?(专家|医生|大夫)",
        "template": "SELECT ?p WHERE {{ ?p {w} ?h . ?h {l} {{division}} }}".format(
            w=prop("workAt"), l=prop("locateAt")
        ),
        "answer_kind": "entity_list",
        "slot_types": {"division": "AdministrativeDivision"},
        "examples": ["北京有哪些孤独症专家？"],
    },
    {
        "id": "hospital_by_division",
        "matcher": "{division}(有哪些|有什么|哪里有)(儿童)?医院",
        "template": (
            "SELECT ?h WHERE {{ ?h <{t}> {c} . ?h {l} {{division}} }}"
        ).format(t=RDF_TYPE, c=cls("Hospital"), l=prop("locateAt")),
        "answer_kind": "entity_list",
        "slot_types": {"division": "AdministrativeDivision"},
        "examples": ["南京市有哪些医院？"],
    },
    {
        "id": "scale_time",
        "matcher": "{scale}(量表)?(需要|要|大约)(多长时间|多久)",
        "template": "SELECT ?t WHERE {{ {{scale}} {p} ?t }}".format(p=prop("Time")),
        "answer_kind": "literal",
        "slot_types": {"scale": "ScreeningTool"},
        "examples": ["克氏孤独症行为量表需要多长时间？"],
    },
    {
        "id": "scale_intro",
        "matcher": "(介绍一下|介绍下|了解一下){scale}",
        "template": "SELECT ?i WHERE {{ {{scale}} {p} ?i }}".format(p=prop("Introduction")),
        "answer_kind": "literal",
        "slot_types": {"scale": "ScreeningTool"},
        "examples": ["介绍一下孤独症行为量表"],
    },
    {
        "id": "disease_definition",
        "matcher": "(什么是|何为){disease}",
        "template": "SELECT ?i WHERE {{ {{disease}} {p} ?i }}".format(
            p=prop("Introduction")
        ),
        "answer_kind": "literal",
        "slot_types": {"disease": "Disease"},
        "examples": ["什么是阿斯伯格综合征？"],
    },
    {
        "id": "disease_of_symptom",
        "matcher": "(出现|孩子)?{symptom}(可能)?是(什么病|哪些病|什么疾病)",
        "template": "SELECT ?d WHERE {{ ?d {p} {{symptom}} }}".format(p=prop("hasSymptom")),
        "answer_kind": "entity_list",
        "slot_types": {"symptom": "Symptom"},
        "examples": ["出现语言发育迟缓可能是什么病？"],
    },
    {
        "id": "intervention_intro",
        "matcher": "{intervention}是什么",
        "template": "SELECT ?i WHERE {{ {{intervention}} {p} ?i }}".format(
            p=prop("Introduction")
        ),
        "answer_kind": "literal",
        "slot_types": {"intervention": "InterventionMethod"},
        "examples": ["社交技能训练是什么？"],
    },
    {
        "id": "disease_definition_suffix",
        "matcher": "{disease}是什么(病|疾病|障碍)?",
        "template": "SELECT ?i WHERE {{ {{disease}} {p} ?i }}".format(
            p=prop("Introduction")
        ),
        "answer_kind": "literal",
        "slot_types": {"disease": "Disease"},
        "examples": ["阿斯伯格综合征是什么？"],
    },
]


EVAL_QUESTIONS = [
    {"question": "孤独症都有哪些临床表现？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "哪些干预方法是有效的？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "什么是阿斯伯格综合征？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "孤独症的病因是什么？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "儿童孤独症的好发人群有哪些？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "3岁孩子可以用哪些量表？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "北京有哪些孤独症专家？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "南京市有哪些医院？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "孤独症的诊断标准有哪些？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "孤独症的别名有哪些？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "雷特综合征的ICD编码是什么？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "介绍一下孤独症行为量表", "expect_answered": True, "expect_route": "pattern"},
    {"question": "出现语言发育迟缓可能是什么病？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "社交技能训练是什么？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "克氏孤独症行为量表需要多长时间？", "expect_answered": True, "expect_route": "pattern"},
    {"question": "阿斯伯格综合征", "expect_answered": True, "expect_route": "fallback"},
    {"question": "我想了解结节性硬化症", "expect_answered": True, "expect_route": "fallback"},
    {"question": "今天天气怎么样？", "expect_answered": False, "expect_route": "none"},
    {"question": "世界杯冠军是谁？", "expect_answered": False, "expect_route": "none"},
    {"question": "附近哪里可以野餐？", "expect_answered": False, "expect_route": "none"},
]

INTENT_POSITIVE = [
    "我想给孩子做个筛查", "哪里可以做孤独症筛查", "有没有适合2岁宝宝的量表",
    "想测评一下孩子的发育情况", "如何评估孩子是否有孤独症风险", "我想自测一下",
    "能帮我测一测孩子吗", "孤独症筛查需要多长时间", "有哪些筛查工具",
    "M-CHAT量表怎么填", "想给孩子做个测试", "在线评估孩子的社交能力",
    "帮我评测一下孩子的行为", "孩子需要做哪些评估", "量表筛查结果准确吗",
    "做一次筛查要多少钱", "测试结果说明什么", "如何使用ABC量表",
    "筛查之后该怎么办", "哪里能做发育评估",
]

INTENT_NEGATIVE = [
    "什么是孤独症", "孤独症都有哪些临床表现", "孤独症的病因是什么",
    "哪些干预方法是有效的", "北京有哪些孤独症专家", "孤独症能治愈吗",
    "孤独症和阿斯伯格综合征有什么区别", "孩子不爱说话怎么办", "南京市有哪些医院",
    "雷特综合征的ICD编码是什么", "孤独症的诊断标准有哪些", "儿童孤独症的好发人群",
    "社交技能训练是什么", "语言发育迟缓怎么办", "医生职称有哪些等级",
    "如何与孤独症儿童沟通", "干预训练一般多久见效", "孤独症会遗传吗",
    "结节性硬化症是什么病", "孤独症儿童如何上学",
]


# --------------------------------------------------------------------------
# main
# --------------------------------------------------------------------------


def write_all():
    FIXTURES.mkdir(parents=True, exist_ok=True)

    symptoms = [
        {"id": SYM_ID[zh], "class": c, "Label": {"zh": zh, "en": enl}}
        for zh, enl, c in SYMPTOMS
    ]
    standards = [
        {
            "id": STD_ID[text],
            "class": c,
            "Label": {"zh": text},
            "symptoms": [SYM_ID[s] for s in syms],
        }
        for text, c, syms in STANDARDS
    ]
    interventions = [
        {
            "id": INT_ID[zh],
            "class": "EvidenceBasedPractice",
            "Label": {"zh": zh, "en": enl},
            "Introduction": {"zh": intro},
        }
        for zh, enl, intro in INTERVENTIONS
    ]
    diseases = build_diseases()
    tools, questions, options = build_screening()
    hospitals = [
        {
            "id": hid,
            "Name": {"zh": name},
            "Address": {"zh": addr},
            "ContactDetails": phone,
            "HospitalLevel": {"zh": level},
            "Lat": lat,
            "Lng": lng,
            "division": div,
        }
        for hid, name, addr, phone, level, lat, lng, div in HOSPITALS
    ]
    physicians = [
        {
            "id": pid,
            "Name": {"zh": name},
            "Title": {"zh": title},
            "Specialty": {"zh": spec},
            "HospitalDepartment": {"zh": dept},
            "workAt": hosp,
            "ThumbsUp": up,
            "ThumbsDown": down,
            **({"expertIn": EXPERT_IN[pid]} if pid in EXPERT_IN else {}),
        }
        for pid, name, title, spec, dept, hosp, up, down in PHYSICIANS
    ]
    divisions = [
        {
            "code": code,
            "Name": {"zh": name},
            "level": level,
            "parent": parent,
            "Population": pop,
            "Lat": lat,
            "Lng": lng,
            **({"aliases": aliases} if aliases else {}),
        }
        for code, name, level, parent, pop, lat, lng, aliases in DIVISIONS
    ]

    assert len(diseases) == 49 and len(symptoms) == 65
    assert len(standards) == 43 and len(tools) == 20

    jsonl(FIXTURES / "diseases.jsonl", diseases)
    jsonl(FIXTURES / "symptoms.jsonl", symptoms)
    jsonl(FIXTURES / "standards.jsonl", standards)
    jsonl(FIXTURES / "tools.jsonl", tools)
    jsonl(FIXTURES / "questions.jsonl", questions)
    jsonl(FIXTURES / "options.jsonl", options)
    jsonl(FIXTURES / "physicians.jsonl", physicians)
    jsonl(FIXTURES / "hospitals.jsonl", hospitals)
    jsonl(FIXTURES / "divisions.jsonl", divisions)
    jsonl(FIXTURES / "interventions.jsonl", interventions)

    (DATA / "stopwords.txt").write_text(
        "\n".join(sorted(set(STOPWORDS))) + "\n", encoding="utf-8"
    )
    (DATA / "dictionary.txt").write_text(
        "\n".join(build_dictionary()) + "\n", encoding="utf-8"
    )
    (DATA / "intent_lexicon.txt").write_text(
        "\n".join(INTENT_LEXICON) + "\n", encoding="utf-8"
    )
    jsonl(DATA / "patterns.jsonl", PATTERNS)
    jsonl(DATA / "eval_questions.jsonl", EVAL_QUESTIONS)
    jsonl(
        DATA / "intent_questions.jsonl",
        [{"question": q, "intent": True} for q in INTENT_POSITIVE]
        + [{"question": q, "intent": False} for q in INTENT_NEGATIVE],
    )

    manifest = {
        "counts": {
            "disease": 49,
            "symptom": 65,
            "diagnostic_standard": 43,
            "screening_tool": 20,
            "screening_question": len(questions),
            "option": len(options),
            "physician": 24,
            "hospital": 11,
            "division": len(divisions),
            "intervention": 15,
        },
        "full_scale_targets": {
            "note": "production-scale targets, not reproducible from this fixture",
            "entities": 6166,
            "triples": 69290,
            "physicians": 499,
            "hospitals": 270,
        },
    }
    (FIXTURES / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    print("wrote manifest.json")


def self_check():
    from asdkb.ingest import ingest_all
    from asdkb.namespaces import instance_iri
    from asdkb.qa import QaEngine, load_patterns
    from asdkb.resources import load_word_list, read_data_text

    result = ingest_all(FIXTURES)
    report = result.report
    print("counts:", report.counts)
    print("links:", report.link_counts)
    print("merges:", report.merges)
    print("triples:", len(result.store))
    if report.violations:
        print("VIOLATIONS:")
        for v in report.violations:
            print("  -", v)
        raise SystemExit(1)

    manifest = json.loads((FIXTURES / "manifest.json").read_text(encoding="utf-8"))
    assert report.counts == manifest["counts"], (report.counts, manifest["counts"])

    # the links the explanation features depend on must exist
    q_eye = result.catalog.questions[instance_iri("q_abc_3")]
    assert instance_iri(SYM_ID["不会进行对视"]) in q_eye.corresponding_symptoms, q_eye
    opt_routine = result.catalog.options[instance_iri("opt_abc_9_3")]
    assert instance_iri(STD_ID["坚持相同性，僵化地遵守常规，拒绝日常安排的改变"]) in (
        opt_routine.matched_standards
    ), opt_routine
    opt_cars = result.catalog.options[instance_iri("opt_cars2_1_4")]
    assert instance_iri(
        STD_ID["眼神接触、手势、面部表情、身体定位或言语语调等方面的缺乏、减少或不合规的使用"]
    ) in opt_cars.matched_standards, opt_cars

    engine = QaEngine(
        result.store,
        result.schema,
        load_patterns(read_data_text("patterns.jsonl")),
        sorted(load_word_list("intent_lexicon.txt")),
    )
    answered = 0
    for row in [json.loads(l) for l in read_data_text("eval_questions.jsonl").splitlines() if l.strip()]:
        res = engine.answer_question(row["question"])
        status = "OK " if res.answered == row["expect_answered"] and res.route.value == row["expect_route"] else "FAIL"
        if status == "FAIL":
            print(f"{status} {row['question']} -> route={res.route.value} answered={res.answered} ({res.answer_text[:60]})")
            raise SystemExit(1)
        answered += res.answered
        print(f"{status} [{res.route.value:8}] {row['question']} -> {res.answer_text[:50]}")
    print(f"answered {answered}/20")
    assert answered >= 16

    for row in [json.loads(l) for l in read_data_text("intent_questions.jsonl").splitlines() if l.strip()]:
        got = engine.detect_screening_intent(row["question"])
        assert got == row["intent"], (row, got)
    print("intent fixture: 40/40 agree")
    print("self-check passed")


if __name__ == "__main__":
    write_all()
    self_check()
