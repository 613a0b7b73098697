#!/usr/bin/env python3
"""Generate the synthetic stand-in corpus used by the corpus-level tests.

Eight genres written from templates, with deliberate overlap between
neighbouring genres so the task is not trivially separable. Output is
committed; rerun only when the templates change:

    python3 tests/fixtures/make_surrogate_corpus.py tests/fixtures/surrogate
"""
import random
import sys
from pathlib import Path

SEED = 20240611
COUNTS = [15, 15, 15, 15, 15, 14, 14, 15]  # 118 documents
NAMES = ["story", "recipe", "news", "wikipedia", "novel", "dictation", "insurance", "legal"]


def pick(r, xs):
    return r.choice(xs)


def fill(r, template, pools):
    out = template
    while "{" in out:
        a = out.index("{")
        b = out.index("}", a)
        key = out[a + 1:b]
        out = out[:a] + pick(r, pools[key]) + out[b + 1:]
    return out


CONTRACTIONS = [(" à le ", " au "), (" à les ", " aux "), (" de le ", " du "), (" de les ", " des ")]


def tidy(s):
    for a, b in CONTRACTIONS:
        s = s.replace(a, b)
    return s


def cap(s):
    return s[0].upper() + s[1:] if s else s


STORY = {
    "hero": ["le petit lapin", "la petite fille", "le vieux loup", "le jeune garçon", "la princesse", "le chat", "l'ours", "le renard"],
    "place": ["la forêt", "le jardin", "le village", "le château", "la maison", "la rivière", "la montagne"],
    "thing": ["un gâteau", "un jouet", "une pomme", "une fleur", "un livre", "une étoile", "un cadeau"],
    "adj": ["content", "triste", "heureux", "gentil", "petit", "grand", "fort"],
    "verb": ["joue", "chante", "danse", "court", "saute", "dort", "mange", "regarde le ciel", "rit"],
    "said": ["Bonjour !", "Viens avec moi !", "J'ai faim.", "Où es-tu ?", "Merci beaucoup !", "C'est très beau !"],
}
STORY_T = [
    "Il était une fois {hero}.", "{hero} habite dans {place}.", "Un jour, {hero} part dans {place}.",
    "{hero} est {adj}.", "{hero} {verb}.", "Il trouve {thing}.", "Elle trouve {thing}.", "Le soleil brille.",
    "Il fait beau.", "{hero} dit : « {said} »", "Elle a peur.", "Il a froid.", "Tout le monde est {adj}.",
    "{hero} {verb} et {hero} {verb}.", "Le soir, {hero} rentre à la maison.", "Il aime {thing}.",
    "Elle donne {thing} à {hero}.", "Ils sont amis.", "{hero} ne veut pas partir.", "La nuit tombe sur {place}.",
]

RECIPE = {
    "ing": ["la farine", "le sucre", "le beurre", "les œufs", "le lait", "le sel", "la crème", "le chocolat", "les pommes",
            "l'oignon", "les carottes", "le poulet", "le fromage", "la sauce", "l'huile", "les tomates"],
    "num": ["2", "3", "4", "100", "200", "250", "500", "10", "15", "20", "30", "45"],
    "unit": ["g de", "ml de", "cuillères de", "tasses de"],
    "tool": ["un bol", "une casserole", "une poêle", "le four", "un plat"],
    "act": ["Mélanger", "Ajouter", "Verser", "Couper", "Chauffer", "Cuire", "Saler", "Poivrer", "Laisser reposer",
            "Égoutter", "Émincer", "Hacher"],
    "time": ["5 minutes", "10 minutes", "20 minutes", "30 minutes", "1 heure"],
}
RECIPE_T = [
    "{num} {unit} {ing}.", "{act} {ing}.", "{act} {ing} dans {tool}.", "Préchauffer le four à {num} degrés.",
    "{act} {ing} et {ing}.", "Cuire pendant {time}.", "Servir chaud.", "Servir froid.", "{act} pendant {time}.",
    "Ajouter {ing} puis {act}.", "Laisser cuire {time} à feu doux.", "Bon appétit !", "Ingrédients :",
    "Préparation : {time}.", "Cuisson : {time}.", "{act} {ing} avec {ing}.",
]

NEWS = {
    "who": ["le ministre", "le maire", "la police", "le gouvernement", "le président", "la porte-parole", "le député"],
    "what": ["un nouveau projet", "une enquête", "un budget", "une décision importante", "un accident", "une élection",
             "une hausse des taxes", "un programme de santé"],
    "where": ["la ville", "la région", "la province", "le pays", "la municipalité"],
    "num": ["12", "45", "300", "1 500", "2 millions de", "40"],
    "when": ["lundi", "mardi", "hier", "ce matin", "la semaine dernière", "jeudi soir"],
}
NEWS_T = [
    "{who} a annoncé {what} {when}.", "Selon {who}, {what} coûtera {num} dollars.",
    "{who} a déclaré que {what} serait présenté {when}.", "Cette décision touche {num} citoyens de {where}.",
    "{what} a eu lieu {when} dans {where}.", "La police a ouvert une enquête.", "Aucune victime n'est à déplorer.",
    "Les journalistes attendent une réponse de {who}.", "{who} doit rencontrer les représentants de {where} {when}.",
    "« Nous allons agir rapidement », a affirmé {who}.", "Le budget de {where} augmente de {num} %.",
    "Plusieurs citoyens ont réclamé des mesures, car {what} inquiète la population.",
    "{who} a indiqué que {what} était nécessaire pour {where}.",
]

WIKI = {
    "subj": ["La ville", "Cette espèce", "Le château", "La langue", "Cette théorie", "La région", "L'université",
             "Cette période", "Le système"],
    "is": ["est située", "est connue", "est considérée comme importante", "est utilisée", "a été fondée",
           "a été développée", "est principalement étudiée"],
    "ctx": ["au XIXe siècle", "en 1850", "dans le nord du pays", "par de nombreux auteurs", "depuis l'Antiquité",
            "au cours de cette période", "dans plusieurs régions"],
    "noun": ["la population", "la superficie", "l'architecture", "la structure", "l'évolution", "la production",
             "l'organisation", "le développement"],
    "num": ["1 200", "35", "4 000", "18", "250", "1789", "1905"],
}
WIKI_T = [
    "{subj} {is} {ctx}.", "{noun} de la région compte environ {num} habitants.",
    "{subj}, qui {is} {ctx}, fait l'objet de nombreuses études.", "Selon plusieurs auteurs, {noun} reste un phénomène majeur.",
    "{noun} a connu une évolution importante {ctx}.", "Le terme désigne {noun} {ctx}.",
    "{subj} comporte {num} sections principales.", "Elle est devenue célèbre {ctx}.",
    "{noun} (voir aussi {noun}) est définie comme un concept scientifique.",
    "Les principales caractéristiques de {noun} sont décrites {ctx}.",
]

NOVEL = {
    "who": ["Marie", "Jean", "le vieil homme", "la jeune femme", "Pierre", "sa mère", "l'enfant"],
    "feel": ["une profonde mélancolie", "un étrange silence", "une angoisse sourde", "un désir immense",
             "une tristesse infinie", "un souvenir lointain"],
    "place": ["la rue sombre", "le salon silencieux", "l'escalier obscur", "la chambre vide", "le chemin de la forêt"],
    "look": ["regardait la pluie", "écoutait le vent", "pensait à son père", "marchait lentement",
             "cherchait une lettre", "attendait sans rien dire"],
    "adj": ["pâle", "sombre", "silencieux", "tranquille", "immense", "lointain", "étrange"],
}
NOVEL_T = [
    "{who} {look}, tandis que {feel} envahissait {place}.", "Il y avait dans ses yeux {feel}.",
    "{who} ne disait rien ; le ciel était {adj}, et la nuit tombait sur {place}.",
    "Lorsque {who} entra dans {place}, elle sentit {feel}.", "Le visage de {who} était {adj}.",
    "Elle se souvenait de ce jour où {who} {look}.", "« Pourquoi ? » murmura {who}.",
    "{who} {look} depuis des heures, et personne ne venait.", "Il pleuvait.",
    "Dans {place}, tout semblait {adj}, comme si le temps s'était arrêté.",
    "{who} pensait que son cœur ne pourrait jamais oublier {feel}.",
    "Accoudée à la fenêtre, {who} contemplait interminablement {place}, se demandant si cette existence monotone, faite d'attentes inutiles et de promesses oubliées, finirait un jour par ressembler à celle qu'elle avait autrefois imaginée.",
    "Personne, dans {place}, n'aurait pu deviner l'inquiétude qui dévorait {who}, car elle dissimulait soigneusement, derrière une politesse irréprochable, {feel} que rien ne parvenait à apaiser.",
    "{who} se rappelait confusément les après-midi interminables de son enfance, lorsque la lumière déclinante de l'automne traversait {place} et que chaque objet paraissait {adj}.",
]

DICTATION = {
    "subj": ["Les feuilles", "Les enfants", "Les oiseaux", "Les nuages", "Les voyageurs", "Les fleurs"],
    "pp": ["tombées", "partis", "arrivés", "venus", "envolés", "cueillies"],
    "time": ["à l'automne", "au printemps", "l'hiver dernier", "chaque matin", "au crépuscule"],
    "adj": ["dorées", "silencieux", "nombreux", "légères", "lointains", "fatigués"],
    "sub": ["bien que", "quoique", "afin que", "avant que", "parce que", "lorsque", "puisque"],
}
DICTATION_T = [
    "{subj} que nous avions vus {time} étaient {adj}.", "{subj} se sont {pp} {time}, {sub} le vent soufflait.",
    "{sub} {subj} fussent {adj}, ils ne se plaignaient jamais.", "{subj}, qu'on avait crus {pp}, sont revenus {time}.",
    "Quelle que soit la saison, {subj} demeurent {adj}.", "Il faut que {subj} soient {pp} avant la nuit.",
    "{subj} {time} paraissaient {adj}, et chacun les regardait avec émotion.",
    "Nous nous sommes souvenus des jours où {subj} étaient {pp} {time}.",
    "{sub} l'on considère {subj}, on comprend pourquoi ils semblent {adj}.",
    "Quelque invraisemblables qu'aient paru les explications embarrassées des voyageurs, les habitants du hameau, qui les avaient accueillis {time}, se sont abstenus de les interroger davantage, de peur de les avoir involontairement froissés.",
    "{subj} qu'on avait vus s'amonceler {time} au-dessus des collines environnantes se sont dissipés si rapidement que les promeneurs, pourtant habitués aux caprices de la météorologie, en ont été stupéfaits.",
    "Les innombrables difficultés orthographiques que ces paragraphes renfermaient, loin de décourager les candidats les plus persévérants, les ont au contraire incités à redoubler d'attention jusqu'à la dernière ligne.",
]

INSURANCE = {
    "party": ["l'assuré", "l'assureur", "le souscripteur", "le bénéficiaire"],
    "event": ["un sinistre", "un dommage matériel", "une perte", "un accident", "un vol"],
    "cov": ["la garantie", "la franchise", "la prime", "l'indemnité", "la couverture", "le remboursement"],
    "cond": ["en cas de", "à la suite de", "lors de"],
    "delay": ["dans un délai de 5 jours", "dans les 30 jours", "sans délai", "au plus tard 15 jours après"],
}
INSURANCE_T = [
    "{cond} {event}, {party} doit déclarer le sinistre {delay}.",
    "{cov} (telle que prévue au contrat) s'applique lorsque {party} subit {event}.",
    "Sont exclus de {cov} : les dommages causés intentionnellement ; les pertes indirectes.",
    "{party} s'engage à fournir toute preuve nécessaire ; à défaut, {cov} ne sera pas versée.",
    "Le montant de {cov} est déterminé selon la valeur du bien au jour de {event}.",
    "Lorsque {party} résilie le contrat, {cov} est remboursée en proportion de la période non couverte.",
    "{cov} ne s'applique pas si {party} a fait une fausse déclaration.",
    "Toute réclamation doit être adressée à {party} {delay}.",
    "Conditions générales : {cov}, {cov} et {cov}.",
    "Lorsque {party} omet de déclarer, dans les délais prévus aux conditions particulières, toute circonstance susceptible d'aggraver le risque assuré, {party} peut réduire {cov} proportionnellement à la prime effectivement perçue, conformément aux dispositions contractuelles applicables.",
    "{cov}, calculée sur la base de la valeur de remplacement déterminée contradictoirement par les parties, est versée {delay}, déduction faite de la franchise stipulée aux conditions particulières et de toute indemnité antérieurement accordée.",
    "Nonobstant toute disposition contraire, {party} conserve la faculté de résilier le présent contrat moyennant un préavis écrit, auquel cas la portion de {cov} afférente à la période postérieure à la résiliation est remboursée.",
]

LEGAL = {
    "art": ["l'article 12", "l'article 45", "l'article 3", "l'article 107", "l'article 22"],
    "actor": ["le ministre", "le tribunal", "l'autorité compétente", "le locataire", "le propriétaire", "la personne visée"],
    "obj": ["la demande", "l'avis", "la décision", "le règlement", "la procédure", "l'obligation"],
    "ref": ["(chapitre C-12)", "(L.R.Q., c. A-2)", "(2001, c. 32)", "(alinéa 2)", "(paragraphe 3)"],
}
LEGAL_T = [
    "En vertu de {art} {ref}, {actor} peut, sur {obj} de la personne visée, modifier {obj} ; toutefois, {actor} doit en aviser {actor} par écrit.",
    "Aux fins de la présente loi, on entend par {obj} : toute mesure prise par {actor} en application de {art} {ref}.",
    "Malgré {art}, {actor} qui exerce un droit prévu au présent chapitre doit, dans les délais prescrits, transmettre {obj} à {actor} ; à défaut, {obj} est réputée nulle.",
    "Sous réserve de {art} {ref}, {obj} prend effet à la date de sa notification ; elle est exécutoire malgré toute demande de révision.",
    "{actor} peut, par règlement : 1° déterminer {obj} ; 2° prescrire les conditions applicables ; 3° fixer les frais exigibles.",
    "Quiconque contrevient à {art} commet une infraction et est passible d'une amende (voir {art}) ; en cas de récidive, l'amende est doublée.",
    "Le présent article s'applique, compte tenu des adaptations nécessaires, à {obj} visée à {art} {ref}.",
    "{actor}, lorsqu'il statue sur {obj}, tient compte de {obj}, de {obj} et de toute autre circonstance pertinente.",
    "Le locataire qui, sans motif sérieux, refuse de permettre au propriétaire l'accès au logement conformément aux dispositions de {art} {ref} commet une infraction et est passible, en outre des dommages-intérêts auxquels il peut être condamné, d'une amende déterminée par règlement du gouvernement.",
    "Lorsque {actor} constate qu'une personne contrevient aux dispositions de la présente loi ou des règlements adoptés en application de {art}, {actor} peut ordonner à cette personne, dans le délai qu'il indique, de prendre les mesures nécessaires pour remédier à la situation, notamment la suspension temporaire des activités concernées.",
    "Toute contestation relative à l'interprétation ou à l'application de {obj} visée à {art} {ref} est soumise, à l'exclusion de tout autre tribunal, à {actor}, lequel exerce sa compétence conformément aux règles de procédure prévues par règlement et dans le respect des principes de justice naturelle.",
]

GENRES = [(STORY, STORY_T, (6, 10)), (RECIPE, RECIPE_T, (8, 14)), (NEWS, NEWS_T, (3, 5)), (WIKI, WIKI_T, (3, 5)),
          (NOVEL, NOVEL_T, (3, 5)), (DICTATION, DICTATION_T, (2, 4)), (INSURANCE, INSURANCE_T, (2, 4)),
          (LEGAL, LEGAL_T, (2, 3))]


def paragraph(r, genre, n_sent, borrow=None):
    pools, templates, _ = GENRES[genre]
    sents = []
    for _ in range(n_sent):
        if borrow is not None and r.random() < 0.2:
            bp, bt, _ = GENRES[borrow]
            sents.append(cap(fill(r, pick(r, bt), bp)))
        else:
            sents.append(cap(fill(r, pick(r, templates), pools)))
    return tidy(" ".join(sents))


def document(r, genre, paragraphs=None):
    _, _, (lo, hi) = GENRES[genre]
    neighbours = [g for g in (genre - 1, genre + 1) if 0 <= g < len(GENRES)]
    paras = paragraphs or r.randint(3, 6)
    out = []
    for _ in range(paras):
        borrow = pick(r, neighbours) if r.random() < 0.5 else None
        out.append(paragraph(r, genre, r.randint(lo, hi), borrow))
    return "\n\n".join(out) + "\n"


BLIND = [  # group, expected range, genre mix
    ("children_tales", 0, 1, [0, 0, 1]),
    ("instructions", 0, 1, [1, 1, 0]),
    ("encyclopedia", 3, 5, [3, 4, 3]),
    ("literature", 4, 5, [4, 5]),
    ("contracts", 5, 7, [6, 6, 5]),
    ("statutes", 7, 7, [7]),
]


def main(out_dir):
    out = Path(out_dir)
    r = random.Random(SEED)
    (out / "docs").mkdir(parents=True, exist_ok=True)
    rows = ["path,label,id"]
    for label, count in enumerate(COUNTS):
        for i in range(count):
            doc_id = f"{NAMES[label]}_{i:02d}"
            (out / "docs" / f"{doc_id}.txt").write_text(document(r, label), encoding="utf-8")
            rows.append(f"docs/{doc_id}.txt,{label},{doc_id}")
    (out / "manifest.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")

    (out / "blind").mkdir(exist_ok=True)
    rows = ["path,group,expected_min,expected_max,id"]
    for group, lo, hi, mix in BLIND:
        for i in range(5):
            doc_id = f"{group}_{i}"
            (out / "blind" / f"{doc_id}.txt").write_text(document(r, pick(r, mix)), encoding="utf-8")
            rows.append(f"blind/{doc_id}.txt,{group},{lo},{hi},{doc_id}")
    (out / "blind_manifest.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).parent / "surrogate"))
