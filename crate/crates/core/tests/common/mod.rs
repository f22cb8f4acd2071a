//! Reference values for the critical-parameter tables and series checks.
#![allow(dead_code)]

/// Cubic oscillator critical parameters: (n, e_n, a_n)
pub const CUBIC: &[(usize, f64, f64)] = &[
    (0, 1.28277353565056613093, -2.61180935658887732269),
    (1, 4.18138810077014360384, -5.37587963413369849339),
    (2, 7.47676353160394726567, -7.81513358112177472963),
    (3, 11.03766256181169489101, -10.07564704682307238859),
    (4, 14.80256612165608800708, -12.21531517192134682450),
    (5, 18.73495127980953607811, -14.26484986999511696653),
    (6, 22.81035758069971715940, -16.24312145518034341186),
    (7, 27.01113795189653614640, -18.16282077195707147474),
    (8, 31.32389750099022726315, -20.03302515800852425790),
    (9, 35.73808590511219720429, -21.86052509995057604960),
    (10, 40.24515595690885890435, -23.65057685885184848462),
    (11, 44.83802791988671972061, -25.40736007787328669330),
    (12, 49.51073146222982552736, -27.13427141318176849625),
    (13, 54.25815672832834563937, -28.83412125570701326472),
    (14, 59.07587562778958582850, -30.50927027533271429436),
    (15, 63.96001004047454636742, -32.16172704057811933141),
    (16, 68.9071323790276889544, -33.7932195834531855763),
    (17, 73.91418907962735035, -35.405249007491647104),
    (18, 78.9784407229043496, -36.9991304044614914),
];

/// Quartic oscillator critical parameters: (n, e_n, a_n)
pub const QUARTIC: &[(usize, f64, f64)] = &[
    (0, 3.17338956654721488704, 3.16903614167472725234),
    (1, 11.32761640743725703756, 7.62596008108023132512),
    (2, 21.47216949764589814716, 12.11537100311929607154),
    (3, 33.02428793244591467473, 16.61105709045349074831),
    (4, 45.70317143857586670043, 21.10901685823201530899),
    (5, 59.33696104179223837682, 25.60805225319570978500),
    (6, 73.80750220757362981500, 30.10768065951909870293),
    (7, 89.0276216454863021248, 34.6076704707909122127),
    (8, 104.9298551095159538, 39.10789674411541992),
    (9, 121.460151413651, 43.6082861575648),
    (10, 138.5740516383, 48.10879285437),
];

/// Box critical parameters (N = 100): (n, e_n, a_n)
pub const BOX: &[(usize, f64, f64)] = &[
    (1, 7.1085995967646, 12.3124556722597),
    (2, 30.70746876678, 53.18689607587),
    (3, 70.9578499846, 122.902601369),
    (4, 127.862609648, 221.464536296),
    (5, 201.42215453, 348.87340541),
    (6, 291.6365885, 505.1293887),
    (7, 398.5059476, 690.2325483),
    (8, 522.030247, 904.182911),
    (9, 662.209493, 1146.98049),
    (10, 819.043691, 1418.625286),
    (11, 992.532842, 1719.11731),
    (12, 1182.67695, 2048.4566),
    (13, 1389.476009, 2406.643039),
    (14, 1612.93003, 2793.67675),
    (15, 1853.0390, 3209.5577),
    (16, 2109.80293, 3654.28585),
    (17, 2383.22182, 4127.8613),
];

/// Even Mathieu critical parameters: (n, e_n, a_n)
pub const MATHIEU_EVEN: &[(usize, f64, f64)] = &[
    (0, 2.08869890274969540742210705005, 1.46876861378514199230729308986),
    (1, 27.3191276740344351613697285995, 16.4711658922636564062419622945),
    (2, 80.6582642367217733231182880374, 47.8059657025975746007950854808),
    (3, 162.107021116501331382763597087, 95.4752727072182593469528060868),
    (4, 271.665574614890515399359662310, 159.479212669357057187230627715),
    (5, 409.333979844643194402422763806, 239.817810495650789094138995905),
    (6, 575.112259376089614140747231520, 336.491073930202402676797136666),
    (7, 769.000424132277697815886582932, 449.499006061556590915787589874),
    (8, 990.998480035440536142042914292, 578.841608335703329386650346074),
    (9, 1241.10643057248550485513720070, 724.518881510280902738995966517),
    (10, 1519.32427792923873387283500008, 886.530826016874701071963928710),
    (11, 1825.65202354516187327873747825, 1064.87744211774801292171298635),
    (12, 2160.08966840670531841142295477, 1259.55872998069003603099135522),
    (13, 2522.63721321244381656497120868, 1470.57468971764989052881373681),
    (14, 2913.29465847091131070672526973, 1697.92532140597167537370468979),
    (15, 3332.06200456108886585906171039, 1941.61062510068817839368674171),
    (16, 3778.93925177117865219161016434, 2201.63060084195557145589058358),
    (17, 4253.92640032424228639948323784, 2477.98524865972002792020985438),
    (18, 4757.02345039561656754162219537, 2770.67456857674245292672357391),
    (19, 5288.23040212502649969662284873, 3079.69856061061467026098084225),
];

/// Odd Mathieu critical parameters: (n, e_n, a_n)
pub const MATHIEU_ODD: &[(usize, f64, f64)] = &[
    (0, 11.1904735991293865896020980123, 6.92895475876018147964342787950),
    (1, 50.4750161557597516452005364504, 30.0967728375875542000339071418),
    (2, 117.868924160843684783814608183, 69.5987932768953947914148570394),
    (3, 213.372568637479279993815862834, 125.435411314308272709560436718),
    (4, 336.986043950205287207567051913, 197.606678692480922034682411560),
    (5, 488.709384475887730016940247407, 286.112608761678078262070275163),
    (6, 668.542605654162967762763559437, 390.953206295596779988894940683),
    (7, 876.485715432799125784653813063, 512.128473373035028002129394632),
    (8, 1112.53871831587949363459807537, 649.638411028231983524090563574),
    (9, 1376.70161704521717624727857705, 803.483019827838526685397002241),
    (10, 1668.97441338489968248739617901, 973.662300105893000632623663802),
    (11, 1989.35710852120412013890118346, 1160.17625207096144146935385017),
    (12, 2337.84970328115567018520806164, 1363.02487585944750618204515605),
    (13, 2714.45219825889803861462924172, 1582.20817156403242791167234121),
    (14, 3119.16459389224590002123285708, 1817.72613924973691186689894477),
    (15, 3551.98689051091222035608251051, 2069.57877896343363081378199317),
    (16, 4012.91908836792421411986633224, 2337.76609073971215299835857492),
    (17, 4501.96118766068778990529756079, 2622.28807460462195641810433326),
    (18, 5019.11318854547174684532365214, 2923.14473057813385462524614741),
    (19, 5564.37509114759075160843417379, 3240.33605867580166867491717218),
    (20, 6137.74689556870672683751212500, 3573.86205890991029411196172754),
    (21, 6739.22860189215699095301722791, 3923.72273129028543611909139321),
    (22, 7368.82021018690440596500439191, 4289.91807582487536028648347609),
];

/// 3D rotor critical parameters, M = 0: (n, e_n, a_n)
pub const ROTOR_M0: &[(usize, f64, f64)] = &[
    (0, 1.11850860747789604879129584124, 1.89945169187324547365901350058),
    (1, 9.18271110777602614314692313478, 11.4469373135041414112902268409),
    (2, 24.2743374650550706797661994079, 29.1570364187843312750194317104),
    (3, 46.3934021737006494552531157256, 55.0338230301496191682912997241),
    (4, 75.5399201827232487162615410925, 89.0777654885162317220462901731),
    (5, 111.713900380652159264985603687, 131.288974351497399022703273189),
    (6, 154.915347674365981794080626693, 181.667486575132082638246802870),
    (7, 205.144264889286269484450927321, 240.213317402561182509835277416),
    (8, 262.400653742394747193838743959, 306.926474080239226003553463095),
    (9, 326.684515329643806117627299256, 381.806960425731499957841447183),
    (10, 397.995850380696676312538960541, 464.854778613145237343458945801),
    (11, 476.334659399023202928517978051, 556.069929958740540140414381845),
    (12, 561.700942742735329186201508058, 655.452415299711583081531438128),
    (13, 654.094700673266377544747681781, 763.002235190629698442777914673),
    (14, 753.515933385805509695023538647, 878.719390011577165280746746226),
    (15, 859.964641028959999602185575728, 1002.60388003069997387686020878),
    (16, 973.440823717829191452457184709, 1134.65570544194626000993141955),
    (17, 1093.94448154292133694845436910, 1274.87486638866994863623150054),
    (18, 1221.47561457637370003885489988, 1423.26136297886278858803945222),
    (19, 1356.03422287637955815251177760, 1579.81519529525700149353590512),
    (20, 1497.62030649039627961298586330, 1744.53636340218999765413768412),
    (21, 1646.23386545750814120158073731, 1917.42486735037046169355652365),
    (22, 1801.87489981019236211810598331, 2098.48070718025182357309767219),
    (23, 1964.54340957565684861430612511, 2287.70388292446187324632564614),
    (24, 2134.23939477686596016391844190, 2485.09439460958034550662389867),
    (25, 2310.96285543333590341463022204, 2690.65224225745820774568590806),
    (26, 2494.71379156175787158357548067, 2904.37742588620969831042658859),
];

/// 3D rotor critical parameters, M = 1: (n, e_n, a_n)
pub const ROTOR_M1: &[(usize, f64, f64)] = &[
    (0, 4.55877886725924641484810680290, 5.41369967947421154076411805664),
    (1, 16.1375907539446796948176665321, 19.0366539366410365977084445332),
    (2, 34.7430624620380644472582121023, 40.8287653735067375076502059995),
    (3, 60.3758571013293211953590679065, 70.7886035789264845417420851348),
    (4, 93.0360844044641996314893055308, 108.915912141697487819521883860),
    (5, 132.723772524583231646115964443, 155.210615993212798290721507998),
    (6, 179.438930647130853022234048182, 209.672686433039528417476556225),
    (7, 233.181562239157762078784983517, 272.302110446390569333909532764),
    (8, 293.951668731053476959597684378, 343.098881384146395386662172917),
    (9, 361.749250740754368699280246494, 422.062995536098442607803489884),
    (10, 436.574308535710155676251436297, 509.194450686347541286810153760),
    (11, 518.426842224132039104965417532, 604.493245438036181898256235869),
    (12, 607.306851839808768157712103699, 707.959378871064297125726282783),
    (13, 703.214337381672878552754182737, 819.592850356874342990995371324),
    (14, 806.149298832917264169042646291, 939.393659452681323113486417084),
    (15, 916.111736170419252202468288054, 1067.36180583827770608337708586),
    (16, 1033.10164936940069761597136643, 1203.49728927679401104146044559),
    (17, 1157.11903840568460024469637942, 1347.80010958951204915746935249),
    (18, 1288.16390325671987308020948612, 1500.27026663922414661704954168),
    (19, 1426.23624390197230137796623183, 1660.90776031895581341708604925),
    (20, 1571.33606032299333370614104097, 1829.71259054414926566147073681),
    (21, 1723.46335250333125098536155945, 2006.68475724713587692441388188),
    (22, 1882.61812042837198303912549092, 2191.82426037315622876377594946),
    (23, 2048.80036408515554263447292272, 2385.13109987744749454382949289),
    (24, 2222.01008346219172139310274467, 2586.60527572308025767686172501),
    (25, 2402.24727854928656430083016851, 2796.24678787933020022750968876),
    (26, 2589.51194933738457410429640333, 3014.05563632043725171822918588),
    (27, 2783.80409581842809634738596243, 3240.03182102464926859195853280),
];

/// 3D rotor critical parameters, M = 2: (n, e_n, a_n)
pub const ROTOR_M2: &[(usize, f64, f64)] = &[
    (0, 10.3208166747903646568973037932, 10.4288550159906556880861532857),
    (1, 25.4207623327887544466386812765, 28.1582740390332761901432188657),
    (2, 47.5418883505162195939968735032, 54.0402932178718093860340915287),
    (3, 76.6891413244321657490533380555, 88.0863457427007731538106071227),
    (4, 112.863428447014039279577496571, 130.298593278713537202154514528),
    (5, 156.065011915265846305454988719, 180.677682922350525891381170392),
    (6, 206.293988039332160271025550914, 239.223862208215672094273506007),
    (7, 263.550397974137409898781499507, 305.937241931464725274206268463),
    (8, 327.834261238895647696546524794, 380.817877474579788921392992095),
    (9, 399.145587817865851310066047948, 463.865798896565719257861484418),
    (10, 477.484383113449595517060626653, 555.081023588338983061868169447),
    (11, 562.850650174688796531422680455, 654.463562138981667213774784976),
    (12, 655.244390776764559156247145443, 762.013421271343462077625746903),
    (13, 754.665605975802226624019198276, 877.730605405071181726830864340),
    (14, 861.114296408136089048224877344, 1001.61511753266849630211224248),
    (15, 974.590462458325714246783348069, 1133.66695973221802998481790522),
    (16, 1095.09410435669169203890272295, 1273.88613347875288396645703396),
    (17, 1222.62522223754679315385272073, 1422.27263983948977169496533497),
    (18, 1357.18381617478886848820532514, 1578.82647959970741927897388563),
    (19, 1498.76988620408725276163261494, 1743.54765334592907523155490638),
    (20, 1647.38343233693679094718818617, 1916.43616152210473017073444202),
    (21, 1803.02445456967522723386079799, 2097.49200446830527099050583774),
    (22, 1965.69295288932481713767155384, 2286.71518244784416497102175928),
    (23, 2135.38892727740046871358920607, 2484.10569566659182256233911612),
    (24, 2312.11237771239876092876125824, 2689.66354428692976622447303147),
    (25, 2495.86330417142194483897972208, 2903.38872843796560070724063761),
    (26, 2686.64170663122979954448053178, 3125.28124822310130537164659655),
    (27, 2884.44758506891063512567586423, 3355.34110372570295723343854640),
];

/// 3D rotor critical parameters, M = 3: (n, e_n, a_n)
pub const ROTOR_M3: &[(usize, f64, f64)] = &[
    (0, 18.3932656869754919346793973788, 16.8966533642743226378461806280),
    (1, 37.0261276648638864684719643139, 38.7837061748124744181847563089),
    (2, 62.6669859858232821773304748336, 68.7740586891067799587798103556),
    (3, 95.3306215019736927494865643118, 106.915119263007675368240263857),
    (4, 135.020028981874691707132974862, 153.217194854387105286541377321),
    (5, 181.736151824585196120205263944, 207.683669335464793838124652103),
    (6, 235.479364255103716530989139084, 270.315929035220727532388027826),
    (7, 296.249838077915056335119725000, 341.114629238351091770190392543),
    (8, 364.047660655340315855748376441, 420.080112725581765701401257790),
    (9, 438.872879915491109161811406148, 507.212572987544823448482273980),
    (10, 520.725523743932161740530113278, 602.512125938872178124628573208),
    (11, 609.605609143244375059516152739, 705.978844426605700033807188021),
    (12, 705.513146883842805626496171499, 817.612776073132832143973505231),
    (13, 808.448144007708646910693123011, 937.413953057538062250373844424),
    (14, 918.410605243078958607010397392, 1065.38239774458967328397480722),
    (15, 1035.40053383702430388114116904, 1201.51812605992292426362249599),
    (16, 1159.41793206278032717306053303, 1345.82114958635061001956413623),
    (17, 1290.46280153831843226127329649, 1498.29147690625339213241310920),
    (18, 1428.53514343169852409564937760, 1658.92911448450732063468893814),
    (19, 1573.63495859652721769067726115, 1827.73406726311001705562366049),
    (20, 1725.76224766315409747995008471, 2004.70633907016901625781758106),
    (21, 1884.91701110119625582112832348, 2189.84593290656915762534485743),
    (22, 2051.09924926310976011661273016, 2383.15285115035342904111463156),
    (23, 2224.30896241500183043304906063, 2584.62709570470366379109882661),
    (24, 2404.54615075871058072339672775, 2794.26866810660184529365303827),
    (25, 2591.81081444781812982947448859, 3012.07756960765198814361352503),
    (26, 2786.10295359939116923987354036, 3238.05380123490915423799786847),
    (27, 2987.42256830267472568546233513, 3472.19736383716209562367855469),
];

/// Diagonalization column of the convergence table for p^2 + i x^3: (N, [E0, E1, E2, E3])
pub const CUBIC_DM: &[(usize, [f64; 4])] = &[
    (20, [1.15638348063027, 4.10944159217725, 7.79277572798155, 10.3897589647850]),
    (40, [1.15626708286738, 4.10922836311577, 7.56228430688572, 11.3137218751498]),
    (60, [1.15626707198833, 4.10922875272617, 7.56227386040027, 11.3144217612385]),
    (80, [1.15626707198811, 4.10922875280961, 7.56227385497881, 11.3144218200804]),
    (100, [1.15626707198811, 4.10922875280965, 7.56227385497882, 11.3144218201957]),
];

/// Radius estimates a_1(k) from the box perturbation series: (k, a(k))
pub const BOX_RADIUS: &[(usize, f64)] = &[
    (9, 12.31814954),
    (19, 12.31354496),
    (29, 12.31290237),
    (39, 12.31269737),
    (49, 12.31260686),
    (59, 12.31255909),
    (69, 12.31253084),
    (79, 12.31251277),
    (89, 12.31250051),
    (99, 12.31249181),
];
