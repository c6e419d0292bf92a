#!/usr/bin/env python3
"""Regenerates fixtures/mini-mimic, fixtures/mini-eicu and fixtures/truth.json.

The two databases are small synthetic stand-ins for MIMIC-III and eICU. They
keep the public schema names of the columns involved in the AMI cohort use
case and reproduce the value-format differences between the two systems:

* ICD-9 codes: `41071` (mimic) vs `410.71, I21.4` (eicu)
* gender: `F` / `M` vs `Female` / `Male`
* diagnosis priority: integer sequence numbers vs `Primary` / `Major` / `Other`
* admission time: full timestamp vs time of day

No real patient data is involved. Output is deterministic for a given seed.

    python3 fixtures/generate_fixtures.py
"""
import csv
import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
SEED = 20240517


def write_table(db_dir, table, header, rows):
    os.makedirs(db_dir, exist_ok=True)
    with open(os.path.join(db_dir, f"{table}.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else v for v in row])


def maybe_null(rng, value, p=0.08):
    return None if rng.random() < p else value


def ts(rng, year_lo=2100, year_hi=2190):
    return "%04d-%02d-%02d %02d:%02d:00" % (
        rng.randint(year_lo, year_hi),
        rng.randint(1, 12),
        rng.randint(1, 28),
        rng.randint(0, 23),
        rng.choice([0, 5, 10, 15, 20, 30, 35, 40, 45, 50, 55]),
    )


def time24(rng):
    return "%02d:%02d:00" % (rng.randint(0, 23), rng.randint(0, 59))


# ---------------------------------------------------------------- mimic ----

ICD9 = [
    "41071", "41041", "41011", "4280", "42731", "4019", "5849", "25000",
    "2724", "51881", "0389", "99592", "V4581", "V5861", "E8788", "41401",
]
ADMISSION_LOCATIONS = [
    "EMERGENCY ROOM ADMIT", "PHYS REFERRAL/NORMAL DELI", "TRANSFER FROM HOSP/EXTRAM",
    "CLINIC REFERRAL/PREMATURE", "TRANSFER FROM SKILLED NUR", "TRANSFER FROM OTHER HEALT",
]
DISCHARGE_LOCATIONS = [
    "HOME", "HOME HEALTH CARE", "SNF", "REHAB/DISTINCT PART HOSP", "DEAD/EXPIRED",
    "LONG TERM CARE HOSPITAL", "SHORT TERM HOSPITAL", "DISCH-TRAN TO PSYCH HOSP",
]
INSURANCE = ["Medicare", "Private", "Medicaid", "Government", "Self Pay"]
ETHNICITY_MIMIC = [
    "WHITE", "BLACK/AFRICAN AMERICAN", "HISPANIC OR LATINO", "ASIAN",
    "UNKNOWN/NOT SPECIFIED", "OTHER", "AMERICAN INDIAN/ALASKA NATIVE",
]
ADMIT_DIAGNOSIS = [
    "CORONARY ARTERY DISEASE", "ACUTE MYOCARDIAL INFARCTION", "CONGESTIVE HEART FAILURE",
    "CHEST PAIN", "PNEUMONIA", "SEPSIS", "ST ELEVATION MYOCARDIAL INFARCTION",
    "ACUTE RESPIRATORY FAILURE", "GASTROINTESTINAL BLEED", "ALTERED MENTAL STATUS",
]
DRUGS_MIMIC = [
    "Aspirin", "Metoprolol Tartrate", "Atorvastatin", "Heparin", "Lisinopril",
    "Clopidogrel Bisulfate", "Furosemide", "Insulin", "Potassium Chloride",
    "Captopril", "Simvastatin", "Enoxaparin Sodium", "Carvedilol", "Warfarin",
]
ROUTES_MIMIC = ["PO", "IV", "SC", "PO/NG", "IV DRIP", "NG", "TP", "IH", "SL"]
DOSES_MIMIC = ["81", "325", "25", "12.5", "5000", "40", "80", "1", "0.5", "2-4", "1-10", "20", "75", "6.25"]
CHART_VALUES = [
    "98.6", "120/80", "72", "Hypertension", "Yes", "No", "Normal sinus rhythm",
    "Coronary artery disease", "Diabetes mellitus", "37.2", "95", "Atrial fibrillation",
    "COPD", "Congestive heart failure", "110/70", "18",
]
CHART_UOM = ["deg. F", "mmHg", "bpm", "%", "insp/min", ""]


def build_mimic(rng, out):
    subjects = rng.sample(range(10006, 99999), 30)
    genders = {}
    patients = []
    for i, sid in enumerate(subjects):
        g = rng.choice(["F", "M"])
        genders[sid] = g
        patients.append([
            i + 1, sid, maybe_null(rng, g, 0.1),
            ts(rng, 2020, 2110).replace(" 00:00:00", ""),
        ])
    write_table(out, "patients", ["row_id", "subject_id", "gender", "dob"], patients)

    admissions = []
    hadms = []
    for i in range(40):
        sid = rng.choice(subjects)
        hadm = rng.randint(100001, 199999)
        hadms.append((sid, hadm))
        admissions.append([
            i + 1, sid, hadm, ts(rng), ts(rng),
            rng.choice(ADMISSION_LOCATIONS), rng.choice(DISCHARGE_LOCATIONS),
            rng.choice(INSURANCE), rng.choice(ETHNICITY_MIMIC), rng.choice(ADMIT_DIAGNOSIS),
        ])
    write_table(out, "admissions", [
        "row_id", "subject_id", "hadm_id", "admittime", "dischtime", "admission_location",
        "discharge_location", "insurance", "ethnicity", "diagnosis",
    ], admissions)

    diagnoses = []
    for i in range(60):
        sid, hadm = rng.choice(hadms)
        diagnoses.append([i + 1, sid, hadm, rng.randint(1, 12), rng.choice(ICD9)])
    write_table(out, "diagnoses_icd", ["row_id", "subject_id", "hadm_id", "seq_num", "icd9_code"], diagnoses)

    prescriptions = []
    for i in range(60):
        sid, hadm = rng.choice(hadms)
        prescriptions.append([
            i + 1, sid, hadm, ts(rng).split(" ")[0] + " 00:00:00",
            rng.choice(DRUGS_MIMIC), rng.choice(ROUTES_MIMIC), rng.choice(DOSES_MIMIC),
            rng.choice(["mg", "UNIT", "mL", "tab"]),
        ])
    write_table(out, "prescriptions", [
        "row_id", "subject_id", "hadm_id", "startdate", "drug", "route", "dose_val_rx", "dose_unit_rx",
    ], prescriptions)

    chart = []
    for i in range(60):
        sid, hadm = rng.choice(hadms)
        chart.append([
            i + 1, sid, hadm, rng.choice([220045, 220179, 223761, 220210, 225811, 226512]),
            ts(rng), rng.choice(CHART_VALUES), rng.choice(CHART_UOM),
        ])
    write_table(out, "chartevents", [
        "row_id", "subject_id", "hadm_id", "itemid", "charttime", "value", "valueuom",
    ], chart)


# ----------------------------------------------------------------- eicu ----

ICD9_EICU = [
    "410.71, I21.4", "428.0, I50.9", "486, J18.9", "491.21, J44.1", "285.9, D64.9",
    "599.0, N39.0", "780.09, R40.4", "276.2, E87.2", "787.01, R11.2", "518.81, J96.00",
    "785.52, R65.21", "458.9, I95.9",
]
DIAGNOSIS_STRINGS = [
    "cardiovascular|chest pain / ASHD|coronary artery disease",
    "cardiovascular|ventricular disorders|congestive heart failure",
    "cardiovascular|chest pain / ASHD|acute coronary syndrome|acute myocardial infarction (with ST elevation)",
    "cardiovascular|arrhythmias|atrial fibrillation",
    "pulmonary|respiratory failure|acute respiratory failure",
    "infectious diseases|systemic/other infections|sepsis",
    "renal|disorder of kidney|acute renal failure",
    "pulmonary|pulmonary infections|pneumonia",
    "gastrointestinal|GI bleeding / PUD|upper GI bleeding",
    "neurologic|altered mental status / pain|altered mental status",
]
ADMIT_SOURCES = [
    "Emergency Department", "Operating Room", "Direct Admit", "Floor", "Other Hospital",
    "Recovery Room", "Step-Down Unit (SDU)", "PACU", "Acute Care/Floor", "Chest Pain Center",
]
DISCHARGE_LOCATIONS_EICU = [
    "Home", "Skilled Nursing Facility", "Death", "Rehabilitation", "Other External",
    "Other Hospital", "Nursing Home", "Other",
]
ETHNICITY_EICU = ["Caucasian", "African American", "Hispanic", "Asian", "Native American", "Other/Unknown"]
UNIT_TYPES = ["Med-Surg ICU", "MICU", "CCU-CTICU", "SICU", "Neuro ICU", "Cardiac ICU", "CSICU"]
APACHE_DX = [
    "Infarction, acute myocardial (MI)", "CHF, congestive heart failure", "Sepsis, pulmonary",
    "Rhythm disturbance (atrial, supraventricular)", "Pneumonia, bacterial", "Bleeding, upper GI",
    "Chest pain, unknown origin", "Overdose, sedatives, hypnotics, antipsychotics, benzodiazepines",
]
DRUGS_EICU = [
    "ASPIRIN 81 MG PO CHEW", "METOPROLOL TARTRATE 25 MG PO TABS", "ATORVASTATIN 40 MG PO TABS",
    "HEPARIN SODIUM (PORCINE) 5000 UNIT/ML IJ SOLN", "LISINOPRIL 10 MG PO TABS",
    "CLOPIDOGREL 75 MG PO TABS", "FUROSEMIDE 10 MG/ML IJ SOLN", "INSULIN LISPRO (HUMAN) 100 UNIT/ML SC SOLN",
    "POTASSIUM CHLORIDE 20 MEQ PO TBCR", "ENOXAPARIN 40 MG/0.4ML SC SOLN", "CARVEDILOL 6.25 MG PO TABS",
    "WARFARIN SODIUM 5 MG PO TABS",
]
DOSAGES = ["81 mg", "25 mg", "40 mg", "5000 Units", "10 mg", "75 mg", "20 mEq", "6.25 mg", "2 Units", "0.5 mg", "4 Units"]
ROUTES_EICU = ["PO", "IV", "SUBCUT", "IV PUSH", "Inhalation", "NG", "TOPICAL", "SL", "IV - continuous infusion"]
FREQUENCIES = ["Q24H", "BID", "TID", "Q6H", "Q8H", "daily", "PRN", "Once", "QID", "Q4H PRN"]
PAST_HISTORY_PATHS = [
    "notes/Progress Notes/Past History/Organ Systems/Cardiovascular (R)/Hypertension Requiring Treatment/Hypertension Requiring Treatment",
    "notes/Progress Notes/Past History/Organ Systems/Cardiovascular (R)/Congestive Heart Failure/CHF",
    "notes/Progress Notes/Past History/Organ Systems/Endocrine (R)/Insulin Dependent Diabetes/insulin dependent diabetes",
    "notes/Progress Notes/Past History/Organ Systems/Pulmonary/COPD/COPD  - moderate",
    "notes/Progress Notes/Past History/Past History Obtain Options/No Health Problems/no health problems",
]
PAST_HISTORY_VALUES = [
    "Hypertension Requiring Treatment", "CHF", "insulin dependent diabetes", "COPD  - moderate",
    "no health problems", "MI - within 6 months", "atrial fibrillation - chronic",
    "coronary artery disease", "renal insufficiency - baseline creatinine 1-2",
]
PAST_HISTORY_TEXT = PAST_HISTORY_VALUES + ["72", "2", "1", "98.6", "120/80", "Performed - 1 vessel"]
LAB_NAMES = ["potassium", "sodium", "creatinine", "glucose", "troponin - I", "BUN", "Hgb", "WBC x 1000", "lactate", "CPK-MB"]
LAB_OTHER_NAMES = ["Ferritin", "Free T4", "LDL", "HDL", "Vancomycin - trough", "BNP", "Urine culture"]
LAB_OTHER_VALUES = ["Positive", "Negative", "142", "0.9", "<0.01", "Pending", "12.5", "None seen", "1+", "Yes"]
NURSE_CAT = ["Vital Signs", "Scores", "Other Vital Signs and Infusions"]
NURSE_VALUES = ["98.6", "72", "120", "Yes", "15", "Normal", "37.1", "Alert", "Sedated", "96"]
NOTE_TYPES = ["Progress", "Admission", "Comprehensive Progress", "Brief Progress", "Admission Note"]
NOTE_PATHS = ["notes/Progress Notes/Social History / Family History/Social History/Social History/Emotional Status",
              "notes/Progress Notes/Physical Exam/Physical Exam/Neurologic/GCS/Eyes/4"]
NOTE_VALUES = ["Emotional Status", "calm", "4", "5", "anxious", "Eyes", "Verbal", "Motor"]
NOTE_TEXT = ["calm", "spontaneously", "oriented", "anxious", "normal", "4", "obeys commands"]
CELL_PATHS = ["flowsheet|Flowsheet Cell Labels|I&O|Intake (ml)|Oral Intake",
              "flowsheet|Flowsheet Cell Labels|I&O|Output (ml)|Urine",
              "flowsheet|Flowsheet Cell Labels|I&O|Intake (ml)|Continuous Infusion Meds"]
ALLERGY_TYPES = ["Allergy", "Intolerance", "Not Applicable"]
ALLERGY_NAMES = ["penicillins", "sulfa (sulfonamide antibiotics)", "morphine", "codeine", "latex", "No Known Allergies", "iodine"]
TREATMENTS = ["cardiovascular|myocardial ischemia / infarction|antiplatelet agent|aspirin",
              "cardiovascular|myocardial ischemia / infarction|beta blocker|metoprolol",
              "pulmonary|ventilation and oxygenation|mechanical ventilation",
              "infectious diseases|medications|therapeutic antibacterials",
              "renal|electrolyte correction|administration of electrolytes|potassium"]
CULTURE_SITES = ["Blood, Venipuncture", "Urine, Catheter Specimen", "Sputum, Tracheal Specimen", "Wound, Decubitus"]
ORGANISMS = ["Escherichia coli", "Staphylococcus aureus", "Klebsiella pneumoniae", "no growth", "Enterococcus faecalis"]
ANTIBIOTICS = ["vancomycin", "ceftriaxone", "ciprofloxacin", "piperacillin/tazobactam", "gentamicin"]
SENSITIVITY = ["Sensitive", "Resistant", "Intermediate"]
AIRWAY_TYPES = ["Oral ETT", "Nasal ETT", "Tracheostomy", "Double-Lumen Tube"]
AIRWAY_POS = ["Lip", "Teeth", "Gums", "Nares"]
CPL_GROUPS = ["Care Limitation", "Ventilation", "Airway", "Infectious Disease", "Psychosocial Status", "Activity"]
CPL_VALUES = ["Full Therapy", "Do not resuscitate", "Ventilated - chronic dependency", "Spontaneous - adequate",
              "Not intubated/normal airway", "Bedrest", "Family/health care proxy/contact info"]
REGIONS = ["Midwest", "South", "West", "Northeast"]
BED_CATEGORIES = ["<100", "100 - 249", "250 - 499", ">= 500"]


def build_eicu(rng, out):
    stays = rng.sample(range(141000, 3353000), 30)
    hospitals = rng.sample(range(56, 459), 8)
    wards = rng.sample(range(80, 1100), 12)

    patient = []
    for stay in stays:
        patient.append([
            stay,
            "%03d-%05d" % (rng.choice([2, 6, 7, 10, 15, 16, 18, 21, 22, 27, 30, 31, 33]), rng.randint(1, 99999)),
            maybe_null(rng, rng.choice(["Female", "Male"]), 0.05),
            rng.choice([str(rng.randint(18, 89)), "> 89"]),
            rng.choice(ETHNICITY_EICU),
            rng.choice(hospitals), rng.choice(wards),
            time24(rng), rng.choice(ADMIT_SOURCES), rng.choice(DISCHARGE_LOCATIONS_EICU),
            rng.choice(["Alive", "Expired"]),
            time24(rng), rng.choice(UNIT_TYPES),
            "%.1f" % rng.uniform(150, 195), "%.1f" % rng.uniform(45, 140),
            rng.choice(APACHE_DX),
        ])
    write_table(out, "patient", [
        "patientunitstayid", "uniquepid", "gender", "age", "ethnicity", "hospitalid",
        "wardid", "hospitaladmittime24", "hospitaladmitsource", "hospitaldischargelocation",
        "hospitaldischargestatus", "unitadmittime24", "unittype", "admissionheight",
        "admissionweight", "apacheadmissiondx",
    ], patient)

    write_table(out, "hospital", ["hospitalid", "numbedscategory", "teachingstatus", "region"], [
        [h, rng.choice(BED_CATEGORIES), rng.choice(["t", "f"]), rng.choice(REGIONS)] for h in hospitals
    ])

    diagnosis = []
    for _ in range(60):
        diagnosis.append([
            rng.choice(stays), rng.randint(3000000, 9999999), rng.randint(-500, 9000),
            rng.choice(DIAGNOSIS_STRINGS), maybe_null(rng, rng.choice(ICD9_EICU), 0.15),
            rng.choice(["Primary", "Major", "Other"]),
        ])
    write_table(out, "diagnosis", [
        "patientunitstayid", "diagnosisid", "diagnosisoffset", "diagnosisstring", "icd9code", "diagnosispriority",
    ], diagnosis)

    medication = []
    for _ in range(60):
        medication.append([
            rng.choice(stays), rng.randint(10000000, 99999999), rng.choice(DRUGS_EICU),
            rng.choice(DOSAGES), rng.choice(ROUTES_EICU), rng.choice(FREQUENCIES),
            rng.randint(-1000, 12000), rng.choice(["No", "Yes"]),
            rng.choice([1866, 2888, 4042, 8255, 10321, 18726, 20951, 25462, 33442]),
            rng.choice([0, 5, 9, 21, 38, 49, 64, 70]),
        ])
    write_table(out, "medication", [
        "patientunitstayid", "medicationid", "drugname", "dosage", "routeadmin", "frequency",
        "drugstartoffset", "drugordercancelled", "drughiclseqno", "gtc",
    ], medication)

    pasthistory = []
    for _ in range(40):
        pasthistory.append([
            rng.choice(stays), rng.randint(1000000, 9999999), rng.choice(PAST_HISTORY_PATHS),
            rng.choice(PAST_HISTORY_VALUES), rng.choice(PAST_HISTORY_TEXT),
        ])
    write_table(out, "pasthistory", [
        "patientunitstayid", "pasthistoryid", "pasthistorypath", "pasthistoryvalue", "pasthistoryvaluetext",
    ], pasthistory)

    # Tables below carry their own keys only, so they are pure distractors.
    write_table(out, "lab", ["labid", "labresultoffset", "labname", "labresult", "labmeasurenamesystem"], [
        [rng.randint(100000000, 999999999), rng.randint(-2000, 10000), rng.choice(LAB_NAMES),
         "%.2f" % rng.uniform(0.01, 300), rng.choice(["mmol/L", "mg/dL", "ng/mL", "g/dL", "K/mcL"])]
        for _ in range(40)
    ])
    write_table(out, "customlab", ["customlabid", "labotheroffset", "labothername", "labothervaluetext"], [
        [rng.randint(1000, 999999), rng.randint(-1000, 9000), rng.choice(LAB_OTHER_NAMES), rng.choice(LAB_OTHER_VALUES)]
        for _ in range(30)
    ])
    write_table(out, "nursecharting", [
        "nursingchartid", "nursingchartoffset", "nursingchartcelltypecat", "nursingchartvalue",
    ], [
        [rng.randint(100000000, 999999999), rng.randint(-500, 12000), rng.choice(NURSE_CAT), rng.choice(NURSE_VALUES)]
        for _ in range(40)
    ])
    write_table(out, "note", ["noteid", "noteoffset", "notetype", "notepath", "notevalue", "notetext"], [
        [rng.randint(10000000, 99999999), rng.randint(0, 9000), rng.choice(NOTE_TYPES),
         rng.choice(NOTE_PATHS), rng.choice(NOTE_VALUES), rng.choice(NOTE_TEXT)]
        for _ in range(30)
    ])
    write_table(out, "intakeoutput", [
        "intakeoutputid", "intakeoutputoffset", "intaketotal", "outputtotal", "nettotal", "cellpath",
    ], [
        [rng.randint(10000000, 99999999), rng.randint(-300, 9000), "%.1f" % rng.uniform(0, 4000),
         "%.1f" % rng.uniform(0, 3000), "%.1f" % rng.uniform(-2000, 3000), rng.choice(CELL_PATHS)]
        for _ in range(30)
    ])
    write_table(out, "allergy", ["allergyid", "allergyoffset", "allergynotetype", "allergyname", "drughiclseqno"], [
        [rng.randint(100000, 9999999), rng.randint(0, 3000), rng.choice(ALLERGY_TYPES),
         rng.choice(ALLERGY_NAMES), rng.choice([None, str(rng.randint(1000, 40000))])]
        for _ in range(25)
    ])
    write_table(out, "vitalperiodic", [
        "vitalperiodicid", "observationoffset", "temperature", "sao2", "heartrate", "respiration",
        "systemicsystolic", "systemicdiastolic", "systemicmean",
    ], [
        [rng.randint(100000000, 999999999), rng.randint(0, 12000), "%.1f" % rng.uniform(35.5, 39.5),
         rng.randint(85, 100), rng.randint(50, 130), rng.randint(10, 30),
         rng.randint(85, 170), rng.randint(40, 95), rng.randint(55, 120)]
        for _ in range(40)
    ])
    write_table(out, "vitalaperiodic", ["vitalaperiodicid", "noninvasivesystolic", "noninvasivediastolic", "noninvasivemean", "cardiacoutput"], [
        [rng.randint(10000000, 99999999), rng.randint(85, 170), rng.randint(40, 95),
         rng.randint(55, 120), "%.2f" % rng.uniform(2.5, 8.0)]
        for _ in range(30)
    ])
    write_table(out, "apacheapsvar", [
        "apacheapsvarid", "intubated", "vent", "dialysis", "eyes", "motor", "verbal", "meanbp", "fio2", "pao2", "creatinine",
    ], [
        [rng.randint(10000, 999999), rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1),
         rng.randint(1, 4), rng.randint(1, 6), rng.randint(1, 5), rng.randint(40, 160),
         rng.choice([-1, 21, 28, 35, 40, 50, 60, 100]), rng.choice([-1, rng.randint(55, 400)]),
         "%.2f" % rng.uniform(0.4, 6.0)]
        for _ in range(30)
    ])
    write_table(out, "apachepredvar", ["apachepredvarid", "diabetes", "aids", "hepaticfailure", "lymphoma", "electivesurgery", "amilocation"], [
        [rng.randint(10000, 999999), rng.randint(0, 1), 0, rng.randint(0, 1), 0,
         rng.choice([None, "0", "1"]), rng.choice(["", "anterior", "inferior", "lateral", "posterior"])]
        for _ in range(30)
    ])
    write_table(out, "infusiondrug", [
        "infusiondrugid", "infusionoffset", "drugrate", "infusionrate", "drugamount", "volumeoffluid", "patientweight",
    ], [
        [rng.randint(1000000, 99999999), rng.randint(0, 9000), "%.1f" % rng.uniform(0.5, 50),
         "%.1f" % rng.uniform(1, 200), rng.choice(["250", "100", "50", "400", "1000"]),
         rng.choice(["250", "100", "500", "50"]), "%.1f" % rng.uniform(45, 140)]
        for _ in range(30)
    ])
    write_table(out, "careplangeneral", ["cplgeneralid", "cplitemoffset", "cplgroup", "cplitemvalue"], [
        [rng.randint(1000000, 99999999), rng.randint(0, 9000), rng.choice(CPL_GROUPS), rng.choice(CPL_VALUES)]
        for _ in range(30)
    ])
    write_table(out, "treatment", ["treatmentid", "treatmentoffset", "treatmentstring", "activeupondischarge"], [
        [rng.randint(1000000, 99999999), rng.randint(0, 9000), rng.choice(TREATMENTS), rng.choice(["True", "False"])]
        for _ in range(30)
    ])
    write_table(out, "microlab", ["microlabid", "culturetakenoffset", "culturesite", "organism", "antibiotic", "sensitivitylevel"], [
        [rng.randint(10000, 999999), rng.randint(0, 9000), rng.choice(CULTURE_SITES),
         rng.choice(ORGANISMS), rng.choice(ANTIBIOTICS), rng.choice(SENSITIVITY)]
        for _ in range(25)
    ])
    write_table(out, "respiratorycare", ["respcareid", "respcarestatusoffset", "airwaytype", "airwaysize", "airwayposition", "cuffpressure"], [
        [rng.randint(100000, 9999999), rng.randint(0, 9000), rng.choice(AIRWAY_TYPES),
         rng.choice(["7", "7.5", "8", "8.5"]), rng.choice(AIRWAY_POS), rng.randint(15, 35)]
        for _ in range(25)
    ])


TRUTH = [
    ("subject_id", "uniquepid"),
    ("hadm_id", "patientunitstayid"),
    ("admittime", "hospitaladmittime24"),
    ("admission_location", "hospitaladmitsource"),
    ("discharge_location", "hospitaldischargelocation"),
    ("insurance", None),
    ("ethnicity", "ethnicity"),
    ("diagnosis", "diagnosisstring"),
    ("seq_num", None),
    ("icd9_code", "icd9code"),
    ("value", "pasthistoryvaluetext"),
    ("gender", "gender"),
    ("dob", None),
    ("drug", "drugname"),
    ("route", "routeadmin"),
    ("dose_val_rx", "dosage"),
]


def main():
    rng = random.Random(SEED)
    build_mimic(rng, os.path.join(HERE, "mini-mimic"))
    build_eicu(rng, os.path.join(HERE, "mini-eicu"))
    entries = [
        {
            "reference": {"db": "mimic", "column": ref},
            "truth": None if tgt is None else {"db": "eicu", "column": tgt},
        }
        for ref, tgt in TRUTH
    ]
    with open(os.path.join(HERE, "truth.json"), "w", encoding="utf-8") as f:
        json.dump({"entries": entries}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
