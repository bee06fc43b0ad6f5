#include "wordlists.hpp"

namespace stylo::wordlists {

const std::vector<std::string_view>& stopwords() {
    static const std::vector<std::string_view> list = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
        "aren't", "as", "at", "be", "because", "been", "before", "being", "below", "between",
        "both", "but", "by", "can", "cannot", "could", "couldn't", "did", "didn't", "do", "does",
        "doesn't", "doing", "don't", "down", "during", "each", "few", "for", "from", "further",
        "had", "hadn't", "has", "hasn't", "have", "haven't", "having", "he", "he'd", "he'll",
        "he's", "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "i'd",
        "i'll", "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's", "its", "itself",
        "just", "let's", "me", "more", "most", "mustn't", "my", "myself", "no", "nor", "not",
        "now", "of", "off", "on", "once", "only", "or", "other", "ought", "our", "ours",
        "ourselves", "out", "over", "own", "same", "shan't", "she", "she'd", "she'll", "she's",
        "should", "shouldn't", "so", "some", "such", "than", "that", "that's", "the", "their",
        "theirs", "them", "themselves", "then", "there", "there's", "these", "they", "they'd",
        "they'll", "they're", "they've", "this", "those", "through", "to", "too", "under",
        "until", "up", "very", "was", "wasn't", "we", "we'd", "we'll", "we're", "we've", "were",
        "weren't", "what", "what's", "when", "where", "which", "while", "who", "whom", "why",
        "will", "with", "won't", "would", "wouldn't", "you", "you'd", "you'll", "you're",
        "you've", "your", "yours", "yourself", "yourselves", "also", "may", "might", "must",
        "shall",
    };
    return list;
}

const std::unordered_set<std::string_view>& stopword_set() {
    static const std::unordered_set<std::string_view> set(stopwords().begin(), stopwords().end());
    return set;
}

const std::vector<std::string_view>& abbreviations() {
    static const std::vector<std::string_view> list = {
        "mr.",   "mrs.",  "ms.",   "dr.",   "prof.", "sr.",   "jr.",   "st.",   "mt.",
        "vs.",   "etc.",  "e.g.",  "i.e.",  "cf.",   "al.",   "approx.", "fig.", "figs.",
        "eq.",   "eqs.",  "no.",   "nos.",  "vol.",  "pp.",   "p.",    "ch.",   "sec.",
        "dept.", "univ.", "inc.",  "ltd.",  "co.",   "corp.", "gov.",  "gen.",  "col.",
        "lt.",   "sgt.",  "capt.", "rev.",  "hon.",  "u.s.",  "u.k.",  "u.n.",  "a.m.",
        "p.m.",  "jan.",  "feb.",  "mar.",  "apr.",  "jun.",  "jul.",  "aug.",  "sep.",
        "sept.", "oct.",  "nov.",  "dec.",  "ca.",   "est.",  "ed.",   "eds.",  "ph.d.",
    };
    return list;
}

const std::unordered_set<std::string_view>& abbreviation_set() {
    static const std::unordered_set<std::string_view> set(abbreviations().begin(),
                                                          abbreviations().end());
    return set;
}

namespace {

void add_all(std::unordered_map<std::string_view, Upos>& map, Upos tag,
             std::initializer_list<std::string_view> words) {
    for (auto w : words) map.emplace(w, tag);
}

}  // namespace

const std::unordered_map<std::string_view, Upos>& closed_class() {
    static const auto map = [] {
        std::unordered_map<std::string_view, Upos> m;
        // First insertion wins, so ambiguous words take the earlier class.
        add_all(m, Upos::AUX,
                {"be", "am", "is", "are", "was", "were", "been", "being", "have", "has", "had",
                 "having", "do", "does", "did", "will", "would", "shall", "should", "can",
                 "could", "may", "might", "must", "ought", "isn't", "aren't", "wasn't",
                 "weren't", "hasn't", "haven't", "hadn't", "doesn't", "don't", "didn't", "won't",
                 "wouldn't", "can't", "cannot", "couldn't", "shouldn't", "mustn't", "'s", "'re",
                 "'ve", "'ll", "'d", "'m"});
        add_all(m, Upos::DET,
                {"the", "a", "an", "this", "that", "these", "those", "every", "each", "either",
                 "neither", "some", "any", "no", "all", "both", "another", "such", "what",
                 "whatever", "which", "whichever", "many", "much", "several", "few", "enough"});
        add_all(m, Upos::PRON,
                {"i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself",
                 "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
                 "it", "its", "itself", "we", "us", "our", "ours", "ourselves", "they", "them",
                 "their", "theirs", "themselves", "who", "whom", "whose", "whoever", "someone",
                 "somebody", "something", "anyone", "anybody", "anything", "everyone",
                 "everybody", "everything", "nobody", "nothing", "none", "one's", "oneself",
                 "i'm", "i've", "i'll", "i'd", "you're", "you've", "you'll", "you'd", "he's",
                 "he'll", "he'd", "she's", "she'll", "she'd", "it's", "we're", "we've", "we'll",
                 "we'd", "they're", "they've", "they'll", "they'd", "that's", "there's",
                 "what's", "let's"});
        add_all(m, Upos::ADP,
                {"of", "in", "on", "at", "by", "for", "with", "about", "against", "between",
                 "into", "through", "during", "before", "after", "above", "below", "to", "from",
                 "up", "down", "over", "under", "around", "among", "across", "along", "behind",
                 "beyond", "within", "without", "upon", "toward", "towards", "onto", "via",
                 "per", "despite", "throughout", "beside", "besides", "near", "inside",
                 "outside", "off", "like", "unlike", "amid", "regarding", "concerning"});
        add_all(m, Upos::CCONJ, {"and", "or", "but", "nor", "yet", "plus"});
        add_all(m, Upos::SCONJ,
                {"because", "although", "though", "while", "whereas", "if", "unless", "until",
                 "since", "as", "whether", "once", "whenever", "wherever", "so", "than", "lest",
                 "when", "where", "why", "how"});
        add_all(m, Upos::PART, {"not", "n't", "'", "na"});
        add_all(m, Upos::INTJ,
                {"oh", "ah", "wow", "hey", "hi", "hello", "yes", "yeah", "yep", "no", "nope",
                 "ok", "okay", "ouch", "oops", "uh", "um", "hmm", "lol", "bye", "goodbye",
                 "thanks", "please", "alas", "hooray", "huh", "whoa", "yay", "ugh", "damn"});
        return m;
    }();
    return map;
}

const std::unordered_map<std::string_view, Upos>& open_class() {
    static const auto map = [] {
        std::unordered_map<std::string_view, Upos> m;
        add_all(m, Upos::VERB,
                {"say", "says", "said", "make", "makes", "made", "go", "goes", "went", "gone",
                 "take", "takes", "took", "taken", "get", "gets", "got", "gotten", "know",
                 "knows", "knew", "known", "think", "thinks", "thought", "see", "sees", "saw",
                 "seen", "come", "comes", "came", "want", "wants", "use", "uses", "find",
                 "finds", "found", "give", "gives", "gave", "given", "tell", "tells", "told",
                 "work", "works", "call", "calls", "try", "tries", "ask", "asks", "need",
                 "needs", "feel", "feels", "felt", "become", "becomes", "became", "leave",
                 "leaves", "left", "put", "puts", "mean", "means", "meant", "keep", "keeps",
                 "kept", "let", "lets", "begin", "begins", "began", "begun", "seem", "seems",
                 "help", "helps", "show", "shows", "shown", "hear", "hears", "heard", "play",
                 "plays", "run", "runs", "ran", "move", "moves", "live", "lives", "believe",
                 "believes", "bring", "brings", "brought", "write", "writes", "wrote",
                 "written", "provide", "provides", "sit", "sits", "sat", "stand", "stands",
                 "stood", "lose", "loses", "lost", "pay", "pays", "paid", "meet", "meets", "met",
                 "include", "includes", "continue", "continues", "set", "sets", "learn",
                 "learns", "change", "changes", "lead", "leads", "led", "understand",
                 "understands", "understood", "watch", "watches", "follow", "follows", "stop",
                 "stops", "create", "creates", "speak", "speaks", "spoke", "spoken", "read",
                 "reads", "allow", "allows", "add", "adds", "spend", "spends", "spent", "grow",
                 "grows", "grew", "grown", "open", "opens", "walk", "walks", "win", "wins",
                 "won", "offer", "offers", "remember", "remembers", "love", "loves", "consider",
                 "considers", "appear", "appears", "buy", "buys", "bought", "wait", "waits",
                 "serve", "serves", "die", "dies", "send", "sends", "sent", "expect", "expects",
                 "build", "builds", "built", "stay", "stays", "fall", "falls", "fell", "fallen",
                 "cut", "cuts", "reach", "reaches", "kill", "kills", "remain", "remains",
                 "suggest", "suggests", "raise", "raises", "pass", "passes", "sell", "sells",
                 "sold", "require", "requires", "report", "reports", "decide", "decides",
                 "pull", "pulls", "eat", "eats", "ate", "eaten", "drink", "drank", "sleep",
                 "slept", "think", "explain", "explains", "describe", "describes", "ensure",
                 "ensures", "involve", "involves", "contain", "contains", "develop",
                 "develops", "produce", "produces", "achieve", "achieves", "improve",
                 "improves", "enjoy", "enjoys", "choose", "chose", "chosen", "hold", "holds",
                 "held", "turn", "turns", "look", "looks", "like", "likes", "feel"});
        add_all(m, Upos::ADV,
                {"very", "also", "just", "now", "then", "too", "here", "there", "well", "often",
                 "never", "always", "still", "even", "only", "already", "soon", "again", "ever",
                 "quite", "rather", "almost", "perhaps", "maybe", "however", "therefore",
                 "thus", "instead", "together", "away", "back", "yet", "sometimes", "usually",
                 "later", "today", "tomorrow", "yesterday", "tonight", "anyway", "indeed",
                 "furthermore", "moreover", "nevertheless", "meanwhile", "otherwise", "else",
                 "abroad", "ahead", "alone", "apart", "forward", "further", "hence", "once",
                 "twice", "somewhat", "somewhere", "anywhere", "everywhere", "nowhere",
                 "less", "more", "most", "least"});
        add_all(m, Upos::ADJ,
                {"good", "new", "first", "last", "long", "great", "little", "own", "other",
                 "old", "right", "big", "high", "different", "small", "large", "next", "early",
                 "young", "important", "public", "bad", "same", "able", "best", "better",
                 "worse", "worst", "real", "sure", "free", "full", "hard", "easy", "clear",
                 "recent", "certain", "whole", "strong", "possible", "social", "true", "false",
                 "low", "late", "major", "minor", "human", "local", "main", "general",
                 "specific", "simple", "common", "special", "open", "short", "nice", "happy",
                 "sad", "angry", "red", "blue", "green", "black", "white", "second", "third",
                 "final", "similar", "available", "likely", "difficult", "significant",
                 "various", "key", "natural", "political", "economic", "national",
                 "international", "personal", "original", "current", "main", "entire"});
        return m;
    }();
    return map;
}

const std::unordered_set<std::string_view>& number_words() {
    static const std::unordered_set<std::string_view> set = {
        "zero",     "one",      "two",       "three",    "four",     "five",    "six",
        "seven",    "eight",    "nine",      "ten",      "eleven",   "twelve",  "thirteen",
        "fourteen", "fifteen",  "sixteen",   "seventeen", "eighteen", "nineteen", "twenty",
        "thirty",   "forty",    "fifty",     "sixty",    "seventy",  "eighty",  "ninety",
        "hundred",  "thousand", "million",   "billion",  "trillion", "dozen",
    };
    return set;
}

const std::unordered_set<std::string_view>& month_names() {
    static const std::unordered_set<std::string_view> set = {
        "january", "february", "march", "april",   "may",      "june",     "july",
        "august",  "september", "october", "november", "december", "jan",  "feb",
        "mar",     "apr",       "jun",     "jul",      "aug",      "sep",  "sept",
        "oct",     "nov",       "dec",
    };
    return set;
}

}  // namespace stylo::wordlists
