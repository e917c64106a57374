//! Frozen reference vocabulary for the stemmer, generated once from an
//! independent implementation of the published algorithm and hand-audited
//! (notably around nested suffixes and the final-y rule).

pub(crate) fn porter_oracle_pairs() -> &'static [(&'static str, &'static str)] {
    PAIRS
}

pub(crate) fn porter_oracle_words() -> impl Iterator<Item = &'static str> {
    PAIRS.iter().map(|p| p.0)
}

const PAIRS: &[(&str, &str)] = &[
    ("caresses", "caress"),
    ("ponies", "poni"),
    ("ties", "ti"),
    ("caress", "caress"),
    ("cats", "cat"),
    ("houses", "hous"),
    ("classes", "class"),
    ("passes", "pass"),
    ("misses", "miss"),
    ("taxes", "tax"),
    ("issues", "issu"),
    ("quotes", "quot"),
    ("votes", "vote"),
    ("bills", "bill"),
    ("seats", "seat"),
    ("laws", "law"),
    ("feed", "feed"),
    ("agreed", "agre"),
    ("plastered", "plaster"),
    ("bled", "bled"),
    ("motoring", "motor"),
    ("sing", "sing"),
    ("conflated", "conflat"),
    ("troubled", "troubl"),
    ("sized", "size"),
    ("hopping", "hop"),
    ("tanned", "tan"),
    ("falling", "fall"),
    ("hissing", "hiss"),
    ("fizzed", "fizz"),
    ("failing", "fail"),
    ("filing", "file"),
    ("hoped", "hope"),
    ("hopped", "hop"),
    ("fitted", "fit"),
    ("fitting", "fit"),
    ("matting", "mat"),
    ("mating", "mate"),
    ("meeting", "meet"),
    ("milling", "mill"),
    ("messing", "mess"),
    ("meetings", "meet"),
    ("disabled", "disabl"),
    ("enabled", "enabl"),
    ("voting", "vote"),
    ("voted", "vote"),
    ("passed", "pass"),
    ("passing", "pass"),
    ("killed", "kill"),
    ("killing", "kill"),
    ("needed", "need"),
    ("exceed", "exce"),
    ("exceeded", "exceed"),
    ("succeed", "succe"),
    ("wanted", "want"),
    ("wanting", "want"),
    ("waited", "wait"),
    ("debated", "debat"),
    ("debating", "debat"),
    ("deemed", "deem"),
    ("spammed", "spam"),
    ("referred", "refer"),
    ("luxuriated", "luxuri"),
    ("relational", "relat"),
    ("conditional", "condit"),
    ("rational", "ration"),
    ("valenci", "valenc"),
    ("hesitanci", "hesit"),
    ("digitizer", "digit"),
    ("conformabli", "conform"),
    ("radicalli", "radic"),
    ("differentli", "differ"),
    ("vileli", "vile"),
    ("analogousli", "analog"),
    ("vietnamization", "vietnam"),
    ("predication", "predic"),
    ("operator", "oper"),
    ("feudalism", "feudal"),
    ("decisiveness", "decis"),
    ("hopefulness", "hope"),
    ("callousness", "callous"),
    ("formaliti", "formal"),
    ("sensitiviti", "sensit"),
    ("sensibiliti", "sensibl"),
    ("organization", "organ"),
    ("organizer", "organ"),
    ("nationalism", "nation"),
    ("generalization", "gener"),
    ("capitalization", "capit"),
    ("normalization", "normal"),
    ("realization", "realiz"),
    ("sensational", "sensat"),
    ("operational", "oper"),
    ("emotional", "emot"),
    ("functional", "function"),
    ("irrational", "irrat"),
    ("activation", "activ"),
    ("information", "inform"),
    ("taxation", "taxat"),
    ("legislation", "legisl"),
    ("imagination", "imagin"),
    ("moderator", "moder"),
    ("legislator", "legisl"),
    ("spectator", "spectat"),
    ("radiator", "radiat"),
    ("triplicate", "triplic"),
    ("formative", "form"),
    ("formalize", "formal"),
    ("electriciti", "electr"),
    ("electrical", "electr"),
    ("hopeful", "hope"),
    ("goodness", "good"),
    ("duplicate", "duplic"),
    ("communicate", "commun"),
    ("legalize", "legal"),
    ("politici", "politici"),
    ("practical", "practic"),
    ("identical", "ident"),
    ("awful", "aw"),
    ("madness", "mad"),
    ("sadness", "sad"),
    ("darkness", "dark"),
    ("usefulness", "us"),
    ("weakness", "weak"),
    ("revival", "reviv"),
    ("allowance", "allow"),
    ("inference", "infer"),
    ("airliner", "airlin"),
    ("adjustable", "adjust"),
    ("defensible", "defens"),
    ("irritant", "irrit"),
    ("replacement", "replac"),
    ("adjustment", "adjust"),
    ("dependent", "depend"),
    ("adoption", "adopt"),
    ("homologou", "homolog"),
    ("communism", "commun"),
    ("activate", "activ"),
    ("angulariti", "angular"),
    ("homologous", "homolog"),
    ("effective", "effect"),
    ("bowdlerize", "bowdler"),
    ("governmental", "government"),
    ("governments", "govern"),
    ("government", "govern"),
    ("apparent", "appar"),
    ("statement", "statement"),
    ("movement", "movement"),
    ("agreement", "agreement"),
    ("arguments", "argument"),
    ("engagement", "engag"),
    ("battlement", "battlement"),
    ("settlement", "settlement"),
    ("developments", "develop"),
    ("departments", "depart"),
    ("involvement", "involv"),
    ("retirement", "retir"),
    ("excitement", "excit"),
    ("requirement", "requir"),
    ("insurance", "insur"),
    ("performance", "perform"),
    ("significance", "signific"),
    ("defiance", "defianc"),
    ("reliance", "relianc"),
    ("conference", "confer"),
    ("preference", "prefer"),
    ("occurrence", "occurr"),
    ("persistence", "persist"),
    ("excellence", "excel"),
    ("influence", "influenc"),
    ("confidence", "confid"),
    ("evidence", "evid"),
    ("president", "presid"),
    ("resident", "resid"),
    ("opponent", "oppon"),
    ("proponent", "propon"),
    ("incumbent", "incumb"),
    ("relation", "relat"),
    ("nation", "nation"),
    ("station", "station"),
    ("education", "educ"),
    ("protection", "protect"),
    ("election", "elect"),
    ("collection", "collect"),
    ("inspection", "inspect"),
    ("rejection", "reject"),
    ("connection", "connect"),
    ("reflection", "reflect"),
    ("decision", "decis"),
    ("division", "divis"),
    ("provision", "provis"),
    ("occasion", "occas"),
    ("session", "session"),
    ("expression", "express"),
    ("profession", "profess"),
    ("aggression", "aggress"),
    ("possession", "possess"),
    ("commission", "commiss"),
    ("admission", "admiss"),
    ("optimism", "optim"),
    ("socialism", "social"),
    ("capitalism", "capit"),
    ("criticism", "critic"),
    ("mechanism", "mechan"),
    ("candidate", "candid"),
    ("delegate", "deleg"),
    ("educate", "educ"),
    ("obligate", "oblig"),
    ("abdicate", "abdic"),
    ("curiositi", "curios"),
    ("responsibiliti", "respons"),
    ("previous", "previou"),
    ("obvious", "obviou"),
    ("continuous", "continu"),
    ("enormous", "enorm"),
    ("tremendous", "tremend"),
    ("objective", "object"),
    ("subjective", "subject"),
    ("collective", "collect"),
    ("protective", "protect"),
    ("attractive", "attract"),
    ("modernize", "modern"),
    ("publicize", "public"),
    ("criticize", "critic"),
    ("socialize", "social"),
    ("probate", "probat"),
    ("rate", "rate"),
    ("cease", "ceas"),
    ("controll", "control"),
    ("roll", "roll"),
    ("create", "creat"),
    ("debate", "debat"),
    ("senate", "senat"),
    ("mandate", "mandat"),
    ("climate", "climat"),
    ("definite", "definit"),
    ("opposite", "opposit"),
    ("favorite", "favorit"),
    ("absolute", "absolut"),
    ("institute", "institut"),
    ("minute", "minut"),
    ("notice", "notic"),
    ("police", "polic"),
    ("service", "servic"),
    ("practice", "practic"),
    ("justice", "justic"),
    ("office", "offic"),
    ("massive", "massiv"),
    ("passive", "passiv"),
    ("native", "nativ"),
    ("motive", "motiv"),
    ("mobile", "mobil"),
    ("fragile", "fragil"),
    ("hostile", "hostil"),
    ("profile", "profil"),
    ("reconcile", "reconcil"),
    ("scandal", "scandal"),
    ("personnel", "personnel"),
    ("overall", "overal"),
    ("install", "instal"),
    ("recall", "recal"),
    ("abatements", "abat"),
    ("attainabiliti", "attain"),
    ("championship", "championship"),
    ("connections", "connect"),
    ("connective", "connect"),
    ("connected", "connect"),
    ("connecting", "connect"),
    ("relate", "relat"),
    ("derive", "deriv"),
    ("demonstrable", "demonstr"),
    ("oscillators", "oscil"),
    ("arsenal", "arsen"),
    ("crepuscular", "crepuscular"),
    ("bacon", "bacon"),
    ("abacus", "abacu"),
    ("transmission", "transmiss"),
    ("illusion", "illus"),
    ("conclusion", "conclus"),
    ("possible", "possibl"),
    ("probable", "probabl"),
    ("terrible", "terribl"),
    ("horrible", "horribl"),
    ("visible", "visibl"),
    ("responsible", "respons"),
    ("incredible", "incred"),
    ("miserable", "miser"),
    ("comfortable", "comfort"),
    ("reasonable", "reason"),
    ("valuable", "valuabl"),
    ("available", "avail"),
    ("remarkable", "remark"),
    ("considerable", "consider"),
    ("vulnerable", "vulner"),
    ("unconstitutional", "unconstitut"),
    ("congress", "congress"),
    ("senator", "senat"),
    ("representative", "repres"),
    ("republican", "republican"),
    ("democrat", "democrat"),
    ("democratic", "democrat"),
    ("liberal", "liber"),
    ("conservative", "conserv"),
    ("progressive", "progress"),
    ("obamacare", "obamacar"),
    ("healthcare", "healthcar"),
    ("medicare", "medicar"),
    ("medicaid", "medicaid"),
    ("insurer", "insur"),
    ("insured", "insur"),
    ("premium", "premium"),
    ("premiums", "premium"),
    ("deductible", "deduct"),
    ("coverage", "coverag"),
    ("covered", "cover"),
    ("uninsured", "uninsur"),
    ("doctors", "doctor"),
    ("patients", "patient"),
    ("hospitals", "hospit"),
    ("clinics", "clinic"),
    ("prescriptions", "prescript"),
    ("prescribed", "prescrib"),
    ("medication", "medic"),
    ("medications", "medic"),
    ("treatment", "treatment"),
    ("treatments", "treatment"),
    ("benefits", "benefit"),
    ("taxed", "tax"),
    ("deficit", "deficit"),
    ("spending", "spend"),
    ("reform", "reform"),
    ("reforms", "reform"),
    ("reformed", "reform"),
    ("reforming", "reform"),
    ("repeal", "repeal"),
    ("repealed", "repeal"),
    ("repealing", "repeal"),
    ("mandates", "mandat"),
    ("mandated", "mandat"),
    ("socialized", "social"),
    ("socializing", "social"),
    ("nationalized", "nation"),
    ("rationing", "ration"),
    ("rationed", "ration"),
    ("bureaucrat", "bureaucrat"),
    ("bureaucrats", "bureaucrat"),
    ("bureaucratic", "bureaucrat"),
    ("freedom", "freedom"),
    ("freedoms", "freedom"),
    ("liberties", "liberti"),
    ("unconstitutionalities", "unconstitution"),
    ("sky", "sky"),
    ("happy", "happi"),
    ("enjoy", "enjoi"),
    ("day", "dai"),
    ("says", "sai"),
    ("crying", "cry"),
    ("dying", "dy"),
    ("flying", "fly"),
    ("syzygy", "syzygi"),
    ("hungry", "hungri"),
    ("thirty", "thirti"),
    ("party", "parti"),
    ("early", "earli"),
    ("only", "onli"),
];
