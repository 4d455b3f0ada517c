#pragma once
// Generated by tests/oracles/generate.py (mpmath, 60 digits). Do not edit.
#include <complex>
namespace oracle {
struct Scaled { double log_magnitude; std::complex<double> phase; };
inline const Scaled sph_j_500_8{-1921.4440189874755, {1.0, 0.0}};
inline const Scaled sph_jp_500_8{-1917.30898006413, {1.0, 0.0}};
inline const Scaled sph_h_300_5{1135.0053884666957, {0.0, -1.0}};
inline const Scaled sph_hp_300_5{1139.1029221411386, {0.0, 1.0}};
inline const Scaled cyl_j_7_z{-10.232767722403133, {-5.9257652525683789e-1, 0.80551415984731899}};
inline const Scaled cyl_jp_7_z{-8.7629799355132504, {-2.9425375147272559e-1, 0.95572733022773155}};
inline const Scaled cyl_h_150_3{538.06007589487238, {0.0, -1.0}};
inline const Scaled cyl_hp_150_3{541.97189751719494, {0.0, 1.0}};
inline const std::complex<double> cyl_h_0_1{7.6519768655796655e-1, 0.088256964215676958};
inline const Scaled hat_h2_300_07{1723.0039749341657, {0.0, -1.0}};
inline const Scaled hat_j3_500_8{-1921.4121136874319, {1.0, 0.0}};
inline const Scaled hat_h3_300_5{1134.9845196236608, {0.0, -1.0}};
struct GridEntry { int n; std::complex<double> z; std::complex<double> j, jp, h, hp, cj, cjp, ch, chp; };
inline const GridEntry moderate_grid[] = {
  {0, {5.0e-1, 0.0}, {9.58851077208406e-1, 0.0}, {-1.6253703063606657e-1, 0.0}, {9.58851077208406e-1, -1.7551651237807454}, {-1.6253703063606657e-1, 4.4691813247698969}, {9.384698072408129e-1, 0.0}, {-2.4226845767487389e-1, 0.0}, {9.384698072408129e-1, -0.44451873350670656}, {-2.4226845767487389e-1, 1.4714723926702431}},
  {0, {3.7000000000000002, -0.40000000000000002}, {-1.6308094688121355e-1, 0.076520724807028724}, {-1.9287454391669343e-1, -0.10035188366115082}, {-2.477003898901246e-1, 0.31517200470807606}, {-2.398968968036218e-1, -0.32474416328101496}, {-4.3269097282567677e-1, 0.020865458473035842}, {-4.8785101451480697e-2, -0.16910379772423245}, {-6.0348651455798151e-1, 0.12631690605077811}, {-4.5170608059920013e-2, -0.61684599115987831}},
  {0, {1.2e+1, -2.5}, {-1.778457438625753e-1, -0.46250861351024381}, {4.7381629362326887e-1, -0.13327721044353417}, {-3.5102124197186231e-1, -0.92981657174199658}, {9.4238038854271109e-1, -0.27091906582654707}, {4.2730617806983552e-1, -1.3142646753921787}, {1.3057658409427359, 0.47495105912438964}, {8.5262798198571907e-1, -2.647084817477888}, {2.5928869912074278, 0.95263834564195973}},
  {0, {2.0e+1, 0.0}, {4.5647262536381383e-2, 0.0}, {1.812173996385053e-2, 0.0}, {4.5647262536381383e-2, -0.020404103090669599}, {1.812173996385053e-2, 0.046667467690914863}, {1.6702466434058315e-1, 0.0}, {-6.6833124175850046e-2, 0.0}, {1.6702466434058315e-1, 0.062640596809383831}, {-6.6833124175850046e-2, 0.1655116143625213}},
  {0, {1.1000000000000001, 0.90000000000000002}, {9.0294873889658705e-1, -0.31548169058837892}, {-4.0476176118721121e-1, -0.21370180501856587}, {1.1514608008884045e-1, -0.26186353893418984}, {3.1583210177728209e-1, 0.30904774588466482}, {8.4333480218123013e-1, -0.46737540495901133}, {-6.1935070498692606e-1, -0.28773013695552156}, {2.5713308506317037e-1, -0.019526602326029504}, {-3.5431427718520173e-2, 0.31805071014635898}},
  {1, {5.0e-1, 0.0}, {1.6253703063606657e-1, 0.0}, {3.0870295466413973e-1, 0.0}, {1.6253703063606657e-1, -4.4691813247698969}, {3.0870295466413973e-1, 16.121560175298842}, {2.4226845767487389e-1, 0.0}, {4.5393289189106513e-1, 0.0}, {2.4226845767487389e-1, -1.4714723926702431}, {4.5393289189106513e-1, 2.4984260518337796}},
  {1, {3.7000000000000002, -0.40000000000000002}, {1.9287454391669343e-1, 0.10035188366115082}, {-2.6033655107288219e-1, 0.01176234399649654}, {2.398968968036218e-1, 0.32474416328101496}, {-3.5711856358846318e-1, 0.12780562739959894}, {4.8785101451480697e-2, 0.16910379772423245}, {-4.4083995161851328e-1, -0.025719241321928224}, {4.5170608059920013e-2, 0.61684599115987831}, {-5.9773870613615861e-1, -0.039776842000883812}},
  {1, {1.2e+1, -2.5}, {-4.7381629362326887e-1, 0.13327721044353417}, {-9.7726095947925555e-2, -0.46802988860194748}, {-9.4238038854271109e-1, 0.27091906582654707}, {-1.9147565359144433e-1, -0.94173108513383401}, {-1.3057658409427359, -0.47495105912438964}, {5.2369095306818399e-1, -1.2546052590071569}, {-2.5928869912074278, -0.95263834564195973}, {1.0438629106405226, -2.5278576785379739}},
  {1, {2.0e+1, 0.0}, {-1.812173996385053e-2, 0.0}, {4.7459436532766436e-2, 0.0}, {-1.812173996385053e-2, -0.046667467690914863}, {4.7459436532766436e-2, -0.015737356321578113}, {6.6833124175850046e-2, 0.0}, {1.6368300813179065e-1, 0.0}, {6.6833124175850046e-2, -0.1655116143625213}, {1.6368300813179065e-1, 0.070916177527509896}},
  {1, {1.1000000000000001, 0.90000000000000002}, {4.0476176118721121e-1, 0.21370180501856587}, {2.7169174699298152e-1, -0.18754743361009416}, {-3.1583210177728209e-1, -0.30904774588466482}, {7.345107169712252e-1, -0.20671143113856863}, {6.1935070498692606e-1, 0.28773013695552156}, {3.7786802062400834e-1, -0.34811179909903127}, {3.5431427718520173e-2, -0.31805071014635898}, {3.79544505182651e-1, 0.16945560861835813}},
  {2, {5.0e-1, 0.0}, {1.6371106607993413e-2, 0.0}, {6.4310390988106093e-2, 0.0}, {1.6371106607993413e-2, -25.059922824838636}, {6.4310390988106093e-2, 145.89035562426192}, {3.0604023458682641e-2, 0.0}, {1.1985236384014332e-1, 0.0}, {3.0604023458682641e-2, -5.4413708371742657}, {1.1985236384014332e-1, 20.29401095602682}},
  {2, {3.7000000000000002, -0.40000000000000002}, {3.0896435316871651e-1, 0.020616846408769552}, {-5.295679936722207e-2, 0.057059160271995452}, {4.1182765043763247e-1, -0.034122438745360386}, {-9.3116377301226759e-2, 0.31640957046862083}, {4.4898893041134978e-1, 0.072303941116892291}, {-1.8693150014783153e-1, 0.10453771046112179}, {5.919908977143357e-1, 0.20587059005254574}, {-2.5923633569777294e-1, 0.47265573234685976}},
  {2, {1.2e+1, -2.5}, {5.7666271990600685e-2, 0.47079052614779931}, {-4.6413281173011166e-1, 0.017596970967658761}, {1.1170285940123533e-1, 0.94768834182975273}, {-9.218388935325369e-1, 0.03827645849622851}, {-6.2007572806653246e-1, 1.1949458426221352}, {-1.1669535501826198, -0.6451894723197213}, {-1.2350978392953262, 2.4086305395980599}, {-2.315446053829204, -1.2962765736211731}},
  {2, {2.0e+1, 0.0}, {-4.8365523530958962e-2, 0.0}, {-1.0866911434206686e-2, 0.0}, {-4.8365523530958962e-2, 0.01340398293703237}, {-1.0866911434206686e-2, -0.048678065131469718}, {-1.6034135192299815e-1, 0.0}, {8.2867259368149861e-2, 0.0}, {-1.6034135192299815e-1, -0.079191758245635961}, {8.2867259368149861e-2, -0.1575924385379577}},
  {2, {1.1000000000000001, 0.90000000000000002}, {4.3936748958821241e-2, 0.12358030512095177}, {1.6780230802350831e-1, 0.070540525458999778}, {-1.0441930354124176, 0.17913537724075802}, {1.1505894320400106, -1.9973982114826988}, {8.7598760933213451e-2, 0.22884819323905122}, {3.2002198128229153e-1, 0.11654783227922033}, {-5.0195592530213162e-1, -0.35843781956274576}, {9.0151613607378346e-1, -0.37496034505021848}},
  {5, {5.0e-1, 0.0}, {2.9774668754574456e-6, 0.0}, {2.9660003646900362e-5, 0.0}, {2.9774668754574456e-6, -61327.563166980636}, {2.9660003646900362e-5, 732509.99726966184}, {8.0536272413574741e-6, 0.0}, {8.0200203950712856e-5, 0.0}, {8.0536272413574741e-6, -7946.3014788074733}, {8.0200203950712856e-5, 78963.742227255221}},
  {5, {3.7000000000000002, -0.40000000000000002}, {3.665174886688452e-2, -0.016174683550088851}, {4.0691492611074583e-2, -0.0099333256363714207}, {3.8833331333768151e-1, -0.78912140057717652}, {-5.1888603708797608e-1, 0.71410428252385093}, {9.5021932693561354e-2, -0.040572847703965143}, {1.0261166917153849e-1, -0.022662119720969503}, {3.7030587673531289e-1, -0.94287612440918545}, {-2.6240339071282652e-1, 0.57127070282407143}},
  {5, {1.2e+1, -2.5}, {-2.626542302856581e-1, -0.30704804680422154}, {2.8648420571898634e-1, -0.21084662649115175}, {-5.1697365083591864e-1, -0.6177783168474035}, {5.6846516532512329e-1, -0.4289533206379579}, {-2.7578798218442633e-1, -1.1263867262703956}, {1.0477775400357844, -0.22879955309168307}, {-5.4054209915688753e-1, -2.2741565226374548}, {2.074653351953628, -0.46620052256178096}},
  {5, {2.0e+1, 0.0}, {1.6683908063095693e-2, 0.0}, {4.5470976790419031e-2, 0.0}, {1.6683908063095693e-2, -0.048172347757372781}, {4.5470976790419031e-2, 0.018554183588989999}, {1.5116976798239497e-1, 0.0}, {9.2878491559264504e-2, 0.0}, {1.5116976798239497e-1, -0.10003576788953243}, {9.2878491559264504e-2, 0.1491026790320373}},
  {5, {1.1000000000000001, 0.90000000000000002}, {-5.3742496458590681e-4, -0.00011496892757656161}, {-1.6822991933161732e-3, 0.00093160564403134879}, {8.8854677036548182e+1, 76.159317807444812}, {-4.9123980353911103e+2, 7.0576340702489025}, {-1.4550577076115227e-3, -0.0003015721422636594}, {-4.5242347135350041e-3, 0.0025587353937606397}, {6.9736774196886116, 42.543287252819191}, {-1.1788125502888272e+2, -93.805495385532812}},
  {11, {5.0e-1, 0.0}, {1.536347347212363e-15, 0.0}, {3.3768903303522071e-14, 0.0}, {1.536347347212363e-15, -56653502811541.474}, {3.3768903303522071e-14, 1358334328195888.3}, {5.9418539622324614e-15, 0.0}, {1.3059694891316616e-13, 0.0}, {5.9418539622324614e-15, -4875154108838.144}, {1.3059694891316616e-13, 107131426771089.6}},
  {11, {3.7000000000000002, -0.40000000000000002}, {1.9711449966109395e-6, -4.1158329769139022e-6}, {6.8724818103944235e-6, -1.0813621936954559e-5}, {2.5377103332138004e+3, -930.89155479969421}, {-8.0146976596342344e+3, 1880.8483628141129}, {7.5782950739403676e-6, -1.571766590465943e-5}, {2.6349471149590377e-5, -4.1169220540368193e-5}, {1.5749723431336029e+3, -786.70620078227374}, {-4.593011345870909e+3, 1624.4569669739357}},
  {11, {1.2e+1, -2.5}, {1.1591685628079198e-1, -0.093144770682893021}, {7.3889713934989412e-2, 0.021385837104131124}, {2.3532346673715692e-1, -0.22164718051912673}, {1.24150229983648e-1, 0.054530058771636428}, {4.2352871077461152e-1, -0.26553602701121092}, {2.3503434691840716e-1, 0.1224295078055068}, {8.2104299276629291e-1, -0.60978986574545661}, {4.2710187086477082e-1, 0.28676710186589929}},
  {11, {2.0e+1, 0.0}, {-9.2131953513635937e-3, 0.0}, {4.5214615855444528e-2, 0.0}, {-9.2131953513635937e-3, -0.05444026677637855}, {4.5214615855444528e-2, -0.0041792504304628315}, {6.1356303375950926e-2, 0.0}, {1.5273659116717207e-1, 0.0}, {6.1356303375950926e-2, -0.18513368039296744}, {1.5273659116717207e-1, 0.057928870700473696}},
  {11, {1.1000000000000001, 0.90000000000000002}, {5.1502482344272984e-11, 1.4083789670318565e-10}, {1.0015794467804083e-9, 5.8317242914503607e-10}, {-1.9343211369641568e+8, 65733394.56648946}, {8.9962852043042394e+8, -1468652362.0241269}, {2.0006337945426415e-10, 5.4429926583720255e-10}, {3.8773566244963324e-9, 2.2474639629303925e-9}, {-4.6767150118727161e+7, -17630578.708588994}, {3.6478346440628155e+8, -126683674.73236755}},
  {20, {5.0e-1, 0.0}, {7.2515880810153971e-32, 0.0}, {2.89979191552121e-30, 0.0}, {7.2515880810153971e-32, -6.7288761838234723e+29}, {2.89979191552121e-30, 2.8252651712584201e+31}, {3.7272019617047145e-31, 0.0}, {1.4904370101207808e-29, 0.0}, {3.7272019617047145e-31, -4.2714301215659064e+28}, {1.4904370101207808e-29, 1.7080099155972286e+30}},
  {20, {3.7000000000000002, -0.40000000000000002}, {-8.8166023887718542e-15, -1.4434005098864004e-14}, {-3.7868369960767176e-14, -8.1046145050311027e-14}, {3.1299900073331838e+11, 239120449710.32046}, {-1.5784360316981399e+12, -1511731933415.9644}, {-4.5086019686380189e-14, -7.3951195599588884e-14}, {-1.9345643303521221e-13, -4.1503795840156825e-13}, {1.5999794875682605e+11, 96705347980.121906}, {-7.822223390388462e+11, -601338008042.10743}},
  {20, {1.2e+1, -2.5}, {-8.3956147881127109e-5, 1.8033786747200929e-5}, {-1.1635919937668799e-4, -1.0774362612979202e-5}, {-8.560845074522495, 26.628165335408463}, {2.3223503272494716e+1, -31.884069624702996}, {-4.1571265783519321e-4, 8.0138951545960161e-5}, {-5.6926284571103392e-4, -6.7047497059335052e-5}, {-3.5027768541374738, 45.736798326390729}, {2.4027846869417849e+1, -55.610205628465462}},
  {20, {2.0e+1, 0.0}, {3.8324851639805179e-2, 0.0}, {1.3826025411001644e-2, 0.0}, {3.8324851639805179e-2, -0.09340113225091441}, {1.3826025411001644e-2, 0.031536549272045042}, {1.6474777377532653e-1, 0.0}, {5.4114129746354459e-2, 0.0}, {1.6474777377532653e-1, -0.28548945860020349}, {5.4114129746354459e-2, 0.099436700351483681}},
  {20, {1.1000000000000001, 0.90000000000000002}, {3.7006257522398407e-23, 7.7476385487426515e-23}, {1.0940999694317503e-21, 5.1128711081500548e-22}, {-1.9433821195208521e+20, 4.7096911112621239e+19}, {1.775157659437257e+21, -2.3600627010513567e+21}, {1.9041697855705993e-22, 3.9809581471827037e-22}, {5.6247965577523935e-21, 2.6244060421377385e-21}, {-3.2512661725063913e+19, -1.5650784144504126e+19}, {4.9299185751100058e+20, -1.20486967764359e+20}},
  {30, {5.0e-1, 0.0}, {5.2154726081997029e-52, 0.0}, {3.1288696132491199e-50, 0.0}, {5.2154726081997029e-52, -6.2873106616509012e+49}, {3.1288696132491199e-50, 3.8975997476708279e+51}, {3.2633568289139785e-51, 0.0}, {1.9577509068275259e-49, 0.0}, {3.2633568289139785e-51, -3.2518065601447757e+48}, {1.9577509068275259e-49, 1.9508035863547013e+50}},
  {30, {3.7000000000000002, -0.40000000000000002}, {-6.6551835389547507e-26, 4.3676153270327282e-27}, {-5.3326666281824188e-25, -2.3342408292320242e-26}, {-1.1361530332306706e+22, 6.555556070946473e+22}, {1.5251846487239646e+23, -5.2852675473724771e+23}, {-4.1571906260237217e-25, 2.712272188657603e-26}, {-3.3305401615783381e-24, -1.4715041463084122e-25}, {-1.6279344540028318e+21, 2.5610779945307358e+22}, {3.5311435394668634e+22, -2.0219372531636706e+23}},
  {30, {1.2e+1, -2.5}, {6.7934502514159367e-11, 4.7945756541283681e-11}, {1.2336109828386959e-10, 1.4237332629895477e-10}, {-7.5237229784074424e+6, -15692923.189374838}, {8.1801055082318952e+6, 39782298.632983272}, {4.1480749560903889e-10, 2.9810092076776758e-10}, {7.4867330655659064e-10, 8.8044431491561442e-10}, {-1.3863252747277579e+7, -17770477.11706418}, {2.0477275951160065e+7, 46359918.387606801}},
  {30, {2.0e+1, 0.0}, {2.1063576943610385e-5, 0.0}, {2.4092897776538016e-5, 0.0}, {2.1063576943610385e-5, -51.616700751016884}, {2.4092897776538016e-5, 59.648183620813089}, {1.2401536360354328e-4, 0.0}, {1.4094026445194727e-4, 0.0}, {1.2401536360354328e-4, -114.97814626308341}, {1.4094026445194727e-4, 126.00001986704625}},
  {30, {1.1000000000000001, 0.90000000000000002}, {-2.8811616571411848e-39, 2.1082918398840713e-38}, {2.3508458489554136e-37, 3.8260767426696925e-37}, {-3.6969201044202023e+35, 3.9658621007669023e+35}, {7.5029401282185247e+35, -1.1799241347615082e+37}, {-1.7993837331480359e-38, 1.319193173065793e-37}, {1.4715547403997527e-36, 2.3935508505515554e-36}, {-7.8990662681304122e+34, 1.0685720831961802e+34}, {1.1459490858484054e+36, -1.2314086920139377e+36}},
};
}  // namespace oracle
