// Generated by gen_bessel_reference.py (mpmath, 40 digits). Do not edit.
// (x, J0, J1, Y0, Y1)
pub const BESSEL_REFERENCE: &[(f64, f64, f64, f64, f64)] = &[
    (
        0.29975,
        0.97766331114113158966,
        0.14819800525411816897,
        -0.80784706784673572237,
        -2.2948156788465900903,
    ),
    (
        0.79925,
        0.84656387591849790706,
        0.3685530429353379088,
        -0.087536207393424366442,
        -0.97899663982893599766,
    ),
    (
        1.29875,
        0.62073834777040695436,
        0.52174978756547378419,
        0.28584915390349507758,
        -0.54940557308317805459,
    ),
    (
        1.79825,
        0.34100403942961969139,
        0.58148670918155908617,
        0.47703937988295962541,
        -0.22471810065528934016,
    ),
    (
        2.29775,
        0.056754950528619829135,
        0.54027479290130564228,
        0.51819176583425564342,
        0.051162134981224951951,
    ),
    (
        2.79725,
        -0.18390808080713643698,
        0.41061958380817763437,
        0.43663944184905328775,
        0.26260413343583598162,
    ),
    (
        3.29675,
        -0.34357693315226718578,
        0.2219993335703724689,
        0.27035171437193851612,
        0.38735825574509272467,
    ),
    (
        3.79625,
        -0.40250547638842970449,
        0.014343906119379947232,
        0.06605648616408214777,
        0.4142788390709585602,
    ),
    (
        4.29575,
        -0.36173877523621589106,
        -0.17053002100506338649,
        -0.12811333086993303656,
        0.34928634654282400334,
    ),
    (
        4.79525,
        -0.24184118510983039987,
        -0.29764958988859524318,
        -0.27128578852810808393,
        0.21506838505032084819,
    ),
    (
        5.29475,
        -0.077619252785157592386,
        -0.34590093793297766548,
        -0.33719865942375886606,
        0.046363591849554683932,
    ),
    (
        5.79425,
        0.089911764367152812506,
        -0.31185880018983417235,
        -0.31842710793523285572,
        -0.11752252616148860659,
    ),
    (
        6.29375,
        0.22250645292875038437,
        -0.20968902426669328923,
        -0.22657215347354109717,
        -0.24107800625114355802,
    ),
    (
        6.79325,
        0.29264848256189754396,
        -0.067261343291832742498,
        -0.088459150983754735388,
        -0.2998945942888539675,
    ),
    (
        7.29275,
        0.28880829829591802484,
        0.080559752196680116404,
        0.060707919679482085575,
        -0.28532514644080803989,
    ),
    (
        7.79225,
        0.21696261257369297544,
        0.19988086291382796404,
        0.18564066963388038079,
        -0.20553346565002404523,
    ),
    (
        8.29175,
        0.098196247276414500532,
        0.26520221855181877107,
        0.25884087671895195933,
        -0.082816989842652130393,
    ),
    (
        8.79125,
        -0.036920535844759023124,
        0.2646698843890786709,
        0.26634060217357025565,
        0.0520800479017962345,
    ),
    (
        9.29075,
        -0.1557937181416895854,
        0.20206389880978083316,
        0.21012571485959962826,
        0.16729218344360753488,
    ),
    (
        9.79025,
        -0.23135935650801840778,
        0.095193916876952296963,
        0.10684269100847854601,
        0.23709921212521239656,
    ),
    (
        10.28975,
        -0.24802495836172509065,
        -0.028807062579920001516,
        -0.016763152188020074623,
        0.24750096562380823137,
    ),
    (
        10.78925,
        -0.20471924433485049059,
        -0.14011453045331314976,
        -0.13050884483268852837,
        0.19890080033027085653,
    ),
    (
        11.28875,
        -0.11447288082231394705,
        -0.2131936068429074816,
        -0.20793154090228022699,
        0.10539179525051636505,
    ),
    (
        11.78825,
        -0.00076360511970641302139,
        -0.23252334519324009693,
        -0.2322843341363509661,
        -0.0090707508051516421354,
    ),
    (
        12.28775,
        0.10840883721215935526,
        -0.19579584258673349195,
        -0.20003599674177692368,
        -0.11662413842609867383,
    ),
    (
        12.78725,
        0.18726459007015454532,
        -0.11394067955908053361,
        -0.12116024906683525427,
        -0.19213685633048029949,
    ),
    (
        13.28675,
        0.21821028794863367214,
        -0.0080759961792964273803,
        -0.016264730235444153956,
        -0.21897468081340157268,
    ),
    (
        13.78625,
        0.19567075999438731363,
        0.095805978160418921048,
        0.088660723969824387987,
        -0.19258703112609373338,
    ),
    (
        14.28575,
        0.12696608800522637567,
        0.17311081764831746818,
        0.16856989795996760537,
        -0.12115045861830788144,
    ),
    (
        14.78525,
        0.030128061182569008798,
        0.20637953303024481042,
        0.20524528383420871344,
        -0.023212112524049301151,
    ),
    (
        15.28475,
        -0.070732503744174560136,
        0.18916807268515255163,
        0.19137772938884599593,
        0.077023906604068312437,
    ),
    (
        15.78425,
        -0.15134193789140594761,
        0.12721626402586021895,
        0.13193980468697360516,
        0.15559273864534995446,
    ),
    (
        16.28375,
        -0.19303161001128086599,
        0.036711581344625897908,
        0.042613211294612187749,
        0.19442932096096922345,
    ),
    (
        16.78325,
        -0.18700220898577074934,
        -0.059860712642568641601,
        -0.054270552744084837565,
        0.18546935491003387662,
    ),
    (
        17.28275,
        -0.13612139735543907088,
        -0.13923606350954534285,
        -0.13524494589567356174,
        0.13226859512997665804,
    ),
    (
        17.78225,
        -0.053899947066879408768,
        -0.18291847315972499011,
        -0.18133277054814097793,
        0.048826439793604899908,
    ),
    (
        18.28175,
        0.039032779087743347848,
        -0.18144617332841091847,
        -0.18244499554506878543,
        -0.044033425444623558618,
    ),
    (
        18.78125,
        0.12005037601111190377,
        -0.13639940611605974974,
        -0.13954394320080724431,
        -0.12380510393497969512,
    ),
    (
        19.28075,
        0.1699896141640575861,
        -0.059732371557578867775,
        -0.064116235514114170136,
        -0.17170812845164290804,
    ),
    (
        19.78025,
        0.177642519014103883,
        0.029345290232632761137,
        0.02484982701939398642,
        -0.17707129963710643751,
    ),
    (
        20.27975,
        0.14223563444977925171,
        0.10913696570639517579,
        0.1056002664144620109,
        -0.13967668451533912458,
    ),
    (
        20.77925,
        0.073355366062307671846,
        0.1607043577513462793,
        0.15889442551334810923,
        -0.069555332254553998315,
    ),
    (
        21.27875,
        -0.011601386897706710853,
        0.17233016650497868085,
        0.17255514738589636641,
        0.01565699126671588832,
    ),
    (
        21.77825,
        -0.091784709742453702813,
        0.14215307927097342035,
        0.14422134654442394286,
        0.095118219901554583135,
    ),
    (
        22.27775,
        -0.14797489031564647543,
        0.078387894664758013116,
        0.08168685888766156651,
        0.14984449949043000834,
    ),
    (
        22.77725,
        -0.16715997608627775829,
        -0.0028686049472012509989,
        0.00079889617734444441234,
        0.16721766015747144374,
    ),
    (
        23.27675,
        -0.14552382124815072672,
        -0.081669997318351851174,
        -0.078527417863585639342,
        0.14387125188766940173,
    ),
    (
        23.77625,
        -0.089163668548598378218,
        -0.13908825206998154418,
        -0.13718376846829999474,
        0.086299708011387010748,
    ),
    (
        24.27575,
        -0.012413387631696704161,
        -0.16173592350769854347,
        -0.16144620208347154528,
        0.0090921599834881874752,
    ),
    (
        24.77525,
        0.065776142293286024,
        -0.14486732505516648498,
        -0.14616455333062773079,
        -0.068738118185860730566,
    ),
    (
        25.27475,
        0.12649200937628868835,
        -0.093344428758930253698,
        -0.095827088344022275097,
        -0.12841167049130753829,
    ),
    (
        25.77425,
        0.15541204904848836795,
        -0.020277880745442219879,
        -0.023287250478922320216,
        -0.15589280885725475038,
    ),
    (
        26.27375,
        0.14616445362027317663,
        0.056286349866324215381,
        0.053496119148873771944,
        -0.14517317572468493711,
    ),
    (
        26.77325,
        0.10171017735680275959,
        0.11780299828273181426,
        0.11588401927460155553,
        -0.099564451644857470532,
    ),
    (
        27.27275,
        0.033453194082437165237,
        0.14970075698017943742,
        0.14906265566523358862,
        -0.030726905821380312927,
    ),
    (
        27.77225,
        -0.041665460331794182125,
        0.14481799830552606841,
        0.14554434362845775456,
        0.044291673088218955922,
    ),
    (
        28.27175,
        -0.10535431645747754226,
        0.10499422194924707259,
        0.10684020902460167697,
        0.10725969442532281025,
    ),
    (
        28.77125,
        -0.14240857980820994998,
        0.040467250445718275064,
        0.042934876406196379581,
        0.14317596148481092182,
    ),
    (
        29.27075,
        -0.1443253224713789787,
        -0.032740875698446065532,
        -0.030271833232941493432,
        0.14382939065893006965,
    ),
    (
        29.77025,
        -0.11124045388149074373,
        -0.096786259026868441115,
        -0.094905106336331001469,
        0.10966260499126214304,
    ),
    (
        30.26975,
        -0.05174939307554502699,
        -0.13633772735673330176,
        -0.13546470662396461948,
        0.049519424246102484547,
    ),
    (
        30.76925,
        0.019310015349024086016,
        -0.14223411832348091138,
        -0.14252903591965437453,
        -0.021628046562307661297,
    ),
    (
        31.26875,
        0.084544481001177963471,
        -0.11359461224883810845,
        -0.11493149803273789617,
        -0.086392605465122162734,
    ),
    (
        31.76825,
        0.12824942741704375453,
        -0.057898523741389666894,
        -0.059909132307540313893,
        -0.12920796373629160329,
    ),
    (
        32.26775,
        0.14017786947783013378,
        0.010952694007747264314,
        0.0087800566270709371187,
        -0.14005865564823343526,
    ),
    (
        32.76725,
        0.1179322306090799122,
        0.076092814333377202841,
        0.074285052072833208457,
        -0.11681267772879278829,
    ),
    (
        33.26675,
        0.067423179890420948618,
        0.12181077080146657517,
        0.12078400366852360692,
        -0.065615807304756917498,
    ),
    (
        33.76625,
        0.0013141271986679772701,
        0.13732956826827802253,
        0.13729508169534749512,
        0.00071830675896582096795,
    ),
    (
        34.26575,
        -0.064142890185558876827,
        0.11933761294357486533,
        0.12026059028430759875,
        0.065904159320893498315,
    ),
    (
        34.76525,
        -0.11309205984059030134,
        0.072679898220826231636,
        0.074298398460026404884,
        0.11417209348646070554,
    ),
    (
        35.26475,
        -0.13390488981843134327,
        0.0090687654945884495266,
        0.010965849676104775602,
        0.13407378008695400481,
    ),
    (
        35.76425,
        -0.12193413300737456246,
        -0.055846330285404412974,
        -0.054136685488529969106,
        0.12118932749032603355,
    ),
    (
        36.26375,
        -0.080540266553911994922,
        -0.10631942326622317181,
        -0.10519916720855749621,
        0.079097715315547800949,
    ),
    (
        36.76325,
        -0.020166519309140424542,
        -0.13031875436742806672,
        -0.13003251694542786752,
        0.018400196393089132566,
    ),
    (
        37.26275,
        0.0442870702547063611,
        -0.122387375392089777,
        -0.12297046463109149535,
        -0.045940801787673887259,
    ),
    (
        37.76225,
        0.097132493008928462466,
        -0.084875200382168571191,
        -0.086153537307479085427,
        -0.098281534952160349924,
    ),
    (
        38.26175,
        0.12570420771364249804,
        -0.027266391186208762437,
        -0.028906333390301318877,
        -0.12609260968625326809,
    ),
    (
        38.76125,
        0.12338756966950405232,
        0.036210310735757625958,
        0.034616062410097005173,
        -0.12295136957641712419,
    ),
    (
        39.26075,
        0.091142759401946227752,
        0.090088249348005189222,
        0.088920497158577245373,
        -0.090017891390773204963,
    ),
    (
        39.76025,
        0.037174840911683340021,
        0.12142418560397228555,
        0.12094721798893327454,
        -0.035657061005756722954,
    ),
    (
        40.25975,
        -0.025146600780662980411,
        0.12290129485355998144,
        0.12320405887613007108,
        0.026678417247097575049,
    ),
    (
        40.75925,
        -0.080592664164700078531,
        0.094531376688199008605,
        0.095512691048968068378,
        0.081770215320306746839,
    ),
    (
        41.25875,
        -0.11578978288532858399,
        0.043561693399248572429,
        0.044961404052822168616,
        0.11634306890295807237,
    ),
    (
        41.75825,
        -0.1224393523844306638,
        -0.017369130067748154686,
        -0.015902151093035983721,
        0.12225774150101611526,
    ),
    (
        42.25775,
        -0.09926862956477610312,
        -0.073358706738129547904,
        -0.072179261517638600015,
        0.098421655856170593902,
    ),
    (
        42.75725,
        -0.052255579781655080001,
        -0.11087958847620377748,
        -0.11026106659484336705,
        0.050969941213650110566,
    ),
    (
        43.25675,
        0.0069063675151990900885,
        -0.1210420757989240092,
        -0.12111381094571082701,
        -0.0083065829602132324943,
    ),
    (
        43.75625,
        0.06371111841045360673,
        -0.10169542619454712664,
        -0.1024166732743287529,
        -0.064885431087196695178,
    ),
    (
        44.25575,
        0.10439109687558593051,
        -0.057871946139937182147,
        -0.05904743747582190651,
        -0.10506478500976813686,
    ),
    (
        44.75525,
        0.11924882478795533365,
        -0.000485247923765333109,
        -0.0018172014088924434314,
        -0.1192765597815252069,
    ),
    (
        45.25475,
        0.10496392832902824493,
        0.056382347534100052593,
        0.05521942042612739832,
        -0.1043603090260090177,
    ),
    (
        45.75425,
        0.065327824442110630848,
        0.098930360220163894425,
        0.09821068657096785191,
        -0.064258609094471155011,
    ),
    (
        46.25375,
        0.010245370663595229156,
        0.11698442954477119797,
        0.11686686743727247264,
        -0.0089827930767339084486,
    ),
    (
        46.75325,
        -0.046735517113917556554,
        0.10642502658101212007,
        0.10691867001400759764,
        0.047881492919865131696,
    ),
    (
        47.25275,
        -0.091751344172657418765,
        0.070121816621042804398,
        0.071088588294745801417,
        0.092508609411730979994,
    ),
    (
        47.75225,
        -0.11399152024607619388,
        0.017163110582749277381,
        0.018355546628498143877,
        0.11418993932799348337,
    ),
    (
        48.25175,
        -0.10829046592227267341,
        -0.039414814676290896299,
        -0.038290740298573828809,
        0.10789953771782344327,
    ),
    (
        48.75125,
        -0.076322763020105722598,
        -0.085832340391584748104,
        -0.085045175164749331464,
        0.075454630310065534236,
    ),
    (
        49.25075,
        -0.026125929490062971408,
        -0.11091837703149621132,
        -0.11064747219104656979,
        0.025004083104124707758,
    ),
    (
        49.75025,
        0.029916231636013588334,
        -0.10879513889054959922,
        -0.10909026675057004986,
        -0.031014010036239940796,
    ),
    (
        1e-06,
        0.99999999999975,
        4.9999999999993747737e-7,
        -8.8690314816594437317,
        -636619.77237217504257,
    ),
    (
        1.9952623149688796e-06,
        0.99999999999900473207,
        9.9763115748394332173e-7,
        -8.429270122325140497,
        -319065.70259405875751,
    ),
    (
        3.9810717055349725e-06,
        0.99999999999603776702,
        1.9905358527635427701e-6,
        -7.9895087629723280958,
        -159911.65684062152034,
    ),
    (
        7.943282347242815e-06,
        0.99999999998422606639,
        3.9716411735900832825e-6,
        -7.5497474035497189739,
        -80145.680939665734221,
    ),
    (
        1.5848931924611134e-05,
        0.99999999993720283921,
        7.9244659620567502433e-6,
        -7.1099860438647287028,
        -40167.992160528702585,
    ),
    (
        3.1622776601683795e-05,
        0.99999999975000000002,
        0.000015811388298865474112,
        -6.6702246831968257391,
        -20131.684952293246499,
    ),
    (
        6.309573444801932e-05,
        0.99999999900473207386,
        0.000031547867208310369856,
        -6.2304633188612927439,
        -10089.743640715061974,
    ),
    (
        0.00012589254117941672,
        0.99999999603776702277,
        0.000062946270465004463627,
        -5.79070194090167748,
        -5056.8509842926605899,
    ),
    (
        0.000251188643150958,
        0.9999999842260664502,
        0.0001255943205849207617,
        -5.3509405125931874351,
        -2534.4296749823564933,
    ),
    (
        0.0005011872336272723,
        0.99999993720284019813,
        0.00025059360894535241398,
        -4.9111788993268889836,
        -1270.2247512456527022,
    ),
    (
        0.001,
        0.999999750000015625,
        0.00049999993750000261457,
        -4.4714166113759232557,
        -636.62216723113941482,
    ),
    (
        0.00199526231496888,
        0.99999900473232125579,
        0.00099763066102937554206,
        -4.0316518828731575367,
        -319.07004224496511479,
    ),
    (
        0.0039810717055349725,
        0.99999603777094366804,
        0.0019905319092866874384,
        -3.5918784153864209713,
        -159.91944021013728554,
    ),
    (
        0.007943282347242816,
        0.99998422612859213154,
        0.0039716098495016569304,
        -3.1520740471102731522,
        -80.159464141827986874,
    ),
    (
        0.015848931924611134,
        0.9999372038250762324,
        0.0079242171479281242602,
        -2.7121621474869542887,
        -40.192007767810827235,
    ),
    (
        0.03162277660168379,
        0.99975001562456597904,
        0.015809411959653555544,
        -2.2718838344597731518,
        -20.172644835278266556,
    ),
    (
        0.06309573444801933,
        0.99900497968579398075,
        0.031532170537763420826,
        -1.8303926389083319083,
        -10.157566672138036373,
    ),
    (
        0.12589254117941673,
        0.99604169011392857156,
        0.062821649018817781154,
        -1.385055407667082962,
        -5.1643039799437141262,
    ),
    (
        0.251188643150958,
        0.98428816171796022399,
        0.12460636407639321905,
        -0.9283657694451799631,
        -2.692411987760559185,
    ),
    (
        0.5011872336272722,
        0.93818185811697912339,
        0.24280725437030362717,
        -0.4427735101759634322,
        -1.4685127932958213949,
    ),
    (
        1.0,
        0.76519768655796655145,
        0.44005058574493351596,
        0.088256964215676957983,
        -0.78121282130028871655,
    ),
    (
        2.404825557695773,
        -6.1087652597367303971e-17,
        0.51914749728946676274,
        0.50992438344847906518,
        0.1027466824382595953,
    ),
    (
        3.8317059702075125,
        -0.4027593957025529721,
        -6.1498073569949060914e-17,
        0.051397673099410900026,
        0.41251739515882575888,
    ),
    (
        12.0,
        0.047689310796833536624,
        -0.22344710449062761237,
        -0.22523731263436143369,
        -0.05709921826089652105,
    ),
    (
        14.999,
        -0.014019354872853469973,
        0.20513183551579903004,
        0.20548526763150571914,
        0.0208695513907345448,
    ),
    (
        15.0,
        -0.014224472826780773234,
        0.20510403861352276115,
        0.20546429603891826479,
        0.02107362803687351194,
    ),
    (
        15.001,
        -0.014429562882636093626,
        0.20507603937866949182,
        0.20544312038695997024,
        0.021277670099089768814,
    ),
    (
        49.99,
        0.054834337337488571311,
        -0.098084627988335622752,
        -0.098628095956253102012,
        -0.055823458135949751987,
    ),
];
